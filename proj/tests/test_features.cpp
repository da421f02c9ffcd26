#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "lintext/common.hpp"
#include "lintext/features.hpp"
#include "oracles.hpp"

using namespace lintext;

namespace {

std::vector<TokenSequence> random_token_corpus(std::mt19937_64& rng, size_t n_docs,
                                               size_t vocab_size, size_t max_len) {
    std::vector<std::string> lexicon;
    for (size_t i = 0; i < vocab_size; ++i) lexicon.push_back("w" + std::to_string(i));
    std::vector<TokenSequence> corpus;
    for (size_t d = 0; d < n_docs; ++d) {
        TokenSequence tokens;
        size_t len = rng() % (max_len + 1);
        for (size_t k = 0; k < len; ++k) tokens.push_back(lexicon[rng() % lexicon.size()]);
        corpus.push_back(tokens);
    }
    return corpus;
}

}  // namespace

TEST_CASE("extract_ngrams windows and counts") {
    TokenSequence abcd = {"a", "b", "c", "d"};
    auto grams = extract_ngrams(abcd, 1, 3);
    CHECK(grams.size() == 9);  // 4 + 3 + 2
    CHECK(extract_ngrams({"a"}, 1, 3) == std::vector<std::string>{"a"});
    CHECK(extract_ngrams({"clear", "cookie", "success"}, 2, 2) ==
          std::vector<std::string>{"clear cookie", "cookie success"});
    CHECK(extract_ngrams({}, 1, 3).empty());
    CHECK_THROWS_AS(extract_ngrams(abcd, 2, 1), DataError);
}

TEST_CASE("idf formula") {
    FeatureConfig cfg;
    cfg.ngram_min = cfg.ngram_max = 1;
    cfg.min_df = 1;
    SUBCASE("term in every document has idf exactly 1") {
        auto model = fit_tfidf({{"tie"}, {"tie"}}, cfg);
        REQUIRE(model.vocabulary.size() == 1);
        CHECK(model.idf[0] == 1.0);
    }
    SUBCASE("N=4, df=1") {
        auto model = fit_tfidf({{"rare"}, {"x"}, {"x"}, {"x"}}, cfg);
        auto idx = model.vocabulary.index_of("rare");
        REQUIRE(idx.has_value());
        // frozen: ln(5/2)+1
        CHECK(model.idf[*idx] == doctest::Approx(1.916290731874155).epsilon(1e-15));
    }
}

TEST_CASE("vocabulary pruning") {
    FeatureConfig cfg;
    cfg.ngram_min = cfg.ngram_max = 1;
    cfg.min_df = 2;
    auto model = fit_tfidf({{"kept", "once"}, {"kept"}}, cfg);
    CHECK(model.vocabulary.index_of("kept").has_value());
    CHECK(!model.vocabulary.index_of("once").has_value());

    cfg.min_df = 3;
    CHECK_THROWS_WITH_AS(fit_tfidf({{"kept", "once"}, {"kept"}}, cfg),
                         doctest::Contains("min_df=3"), DataError);

    // max_df excludes ubiquitous terms
    FeatureConfig half;
    half.ngram_min = half.ngram_max = 1;
    half.min_df = 1;
    half.max_df_ratio = 0.5;
    auto pruned = fit_tfidf({{"common", "one"}, {"common", "two"}}, half);
    CHECK(!pruned.vocabulary.index_of("common").has_value());
    CHECK(pruned.vocabulary.index_of("one").has_value());
}

TEST_CASE("toy corpus transform matches frozen hand computation") {
    FeatureConfig cfg;
    cfg.ngram_min = cfg.ngram_max = 1;
    cfg.min_df = 1;
    std::vector<TokenSequence> corpus = {{"a", "b"}, {"a", "c"}, {"c"}};
    auto model = fit_tfidf(corpus, cfg);
    REQUIRE(model.vocabulary.terms == std::vector<std::string>{"a", "b", "c"});
    // frozen from the hand computation: df(a)=2, df(b)=1, df(c)=2, N=3
    CHECK(model.idf[0] == doctest::Approx(1.2876820724517808).epsilon(1e-15));
    CHECK(model.idf[1] == doctest::Approx(1.6931471805599454).epsilon(1e-15));
    CHECK(model.idf[2] == doctest::Approx(1.2876820724517808).epsilon(1e-15));

    SparseVector v = transform(model, {"a", "b"});
    REQUIRE(v.indices == std::vector<uint32_t>{0, 1});
    CHECK(std::fabs(v.values[0] - 0.6053485081062916) < 1e-12);
    CHECK(std::fabs(v.values[1] - 0.7959605415681652) < 1e-12);
    CHECK(std::fabs(v.l2_norm() - 1.0) < 1e-9);
}

TEST_CASE("transform edge cases") {
    FeatureConfig cfg;
    cfg.ngram_min = cfg.ngram_max = 1;
    cfg.min_df = 1;
    auto model = fit_tfidf({{"known"}, {"known", "other"}}, cfg);
    SUBCASE("out-of-vocabulary document maps to the empty vector") {
        SparseVector v = transform(model, {"unseen", "words"});
        CHECK(v.nnz() == 0);
    }
    SUBCASE("any nonzero vector has unit norm") {
        SparseVector v = transform(model, {"known", "unseen"});
        CHECK(v.nnz() == 1);
        CHECK(std::fabs(v.l2_norm() - 1.0) < 1e-9);
    }
}

TEST_CASE("transform equals dense oracle on random corpora") {
    std::mt19937_64 rng(4242);
    for (int round = 0; round < 25; ++round) {
        auto corpus = random_token_corpus(rng, 2 + rng() % 6, 8, 10);
        FeatureConfig cfg;
        cfg.ngram_min = 1;
        cfg.ngram_max = 1 + rng() % 3;
        cfg.min_df = 1 + rng() % 2;
        cfg.sublinear_tf = (rng() % 2) == 0;
        TfidfModel model;
        try {
            model = fit_tfidf(corpus, cfg);
        } catch (const DataError&) {
            continue;  // everything pruned
        }
        if (model.vocabulary.size() > 50) continue;  // oracle contract covers V <= 50
        for (const auto& doc : corpus) {
            std::vector<std::string> oracle_terms;
            auto dense = oracle::dense_tfidf(corpus, doc, cfg.ngram_min, cfg.ngram_max,
                                             cfg.min_df, cfg.max_df_ratio, cfg.sublinear_tf,
                                             &oracle_terms);
            REQUIRE(oracle_terms == model.vocabulary.terms);
            SparseVector v = transform(model, doc);
            std::vector<double> sparse_dense(model.vocabulary.size(), 0.0);
            for (size_t k = 0; k < v.indices.size(); ++k) sparse_dense[v.indices[k]] = v.values[k];
            for (size_t i = 0; i < dense.size(); ++i) {
                CHECK(std::fabs(sparse_dense[i] - dense[i]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("fit determinism and monotone pruning") {
    std::mt19937_64 rng(7);
    auto corpus = random_token_corpus(rng, 30, 12, 20);
    FeatureConfig cfg;
    cfg.min_df = 1;
    auto m1 = fit_tfidf(corpus, cfg);
    auto m2 = fit_tfidf(corpus, cfg);
    CHECK(m1.vocabulary.terms == m2.vocabulary.terms);
    CHECK(m1.vocabulary.document_frequency == m2.vocabulary.document_frequency);
    REQUIRE(m1.idf.size() == m2.idf.size());
    for (size_t i = 0; i < m1.idf.size(); ++i) CHECK(m1.idf[i] == m2.idf[i]);

    // index/term bijection
    for (size_t i = 0; i < m1.vocabulary.size(); ++i) {
        auto idx = m1.vocabulary.index_of(m1.vocabulary.terms[i]);
        REQUIRE(idx.has_value());
        CHECK(*idx == i);
    }

    // raising min_df never adds terms
    std::set<std::string> prev(m1.vocabulary.terms.begin(), m1.vocabulary.terms.end());
    for (int df = 2; df <= 4; ++df) {
        cfg.min_df = df;
        std::set<std::string> cur;
        try {
            auto m = fit_tfidf(corpus, cfg);
            cur.insert(m.vocabulary.terms.begin(), m.vocabulary.terms.end());
        } catch (const DataError&) {
            // empty vocabulary: subset of anything
        }
        for (const auto& t : cur) CHECK(prev.count(t) == 1);
        prev = cur;
    }
}

TEST_CASE("parallel fit and transform match the serial reference") {
    std::mt19937_64 rng(2024);
    auto corpus = random_token_corpus(rng, 120, 25, 30);
    FeatureConfig cfg;  // defaults: 1..3-grams, min_df 2
    auto parallel = fit_tfidf(corpus, cfg);
    auto serial = fit_tfidf_serial(corpus, cfg);
    CHECK(parallel.vocabulary.terms == serial.vocabulary.terms);
    CHECK(parallel.vocabulary.document_frequency == serial.vocabulary.document_frequency);
    REQUIRE(parallel.idf.size() == serial.idf.size());
    for (size_t i = 0; i < parallel.idf.size(); ++i) CHECK(parallel.idf[i] == serial.idf[i]);

    auto vp = transform_corpus(parallel, corpus);
    auto vs = transform_corpus_serial(serial, corpus);
    REQUIRE(vp.size() == vs.size());
    for (size_t d = 0; d < vp.size(); ++d) {
        CHECK(vp[d].indices == vs[d].indices);
        REQUIRE(vp[d].values.size() == vs[d].values.size());
        for (size_t k = 0; k < vp[d].values.size(); ++k) CHECK(vp[d].values[k] == vs[d].values[k]);
    }
}
