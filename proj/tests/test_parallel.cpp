#include <doctest.h>

#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lintext/eval.hpp"
#include "lintext/model_io.hpp"

using namespace lintext;

namespace {

// A mid-sized synthetic corpus exercising all kernels end to end.
struct Scenario {
    std::vector<TokenSequence> train_tokens;
    std::vector<std::string> train_labels;
    LabeledCorpus test;

    Scenario() {
        std::mt19937_64 rng(60601);
        const char* pools[3][4] = {{"vpn", "dns", "router", "firewall"},
                                   {"query", "index", "shard", "replica"},
                                   {"token", "login", "session", "password"}};
        const char* fill[] = {"system", "issue", "error", "node", "after", "restart"};
        std::vector<Document> test_docs;
        for (int i = 0; i < 240; ++i) {
            int cls = i % 3;
            TokenSequence doc;
            for (int k = 0; k < 2 + static_cast<int>(rng() % 3); ++k) {
                doc.push_back(pools[cls][rng() % 4]);
            }
            for (int k = 0; k < 3 + static_cast<int>(rng() % 5); ++k) {
                doc.push_back(fill[rng() % 6]);
            }
            std::string label = "class" + std::to_string(cls);
            if (i % 4 == 0) {
                std::string text;
                for (const auto& t : doc) text += t + " ";
                test_docs.push_back({"t" + std::to_string(i), text, label});
            } else {
                train_tokens.push_back(doc);
                train_labels.push_back(label);
            }
        }
        test = LabeledCorpus::from_documents(std::move(test_docs));
    }
};

std::string model_bytes(const TfidfModel& tfidf, const MulticlassLinearModel& model) {
    ModelBundle b;
    b.tfidf = tfidf;
    b.model = model;
    b.metadata.dataset_name = "Scenario";
    b.metadata.config_digest = "x";
    return serialize_model(b);
}

}  // namespace

TEST_CASE("every parallel kernel is thread-count invariant") {
    Scenario sc;
    FeatureConfig fcfg;
    fcfg.min_df = 2;
    TrainConfig tcfg;
    tcfg.seed = 7;
    EvalProvenance prov{"Scenario", 7, 0.75, "digest"};

#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    auto tfidf_1 = fit_tfidf(sc.train_tokens, fcfg);
    auto x_1 = transform_corpus(tfidf_1, sc.train_tokens);
    auto model_1 = train_one_vs_rest(x_1, sc.train_labels, tfidf_1.vocabulary.size(), tcfg);
    auto report_1 = evaluate(model_1, tfidf_1, tfidf_1.preprocess_config, sc.test, prov);
    std::string bytes_1 = model_bytes(tfidf_1, model_1);

#ifdef _OPENMP
    omp_set_num_threads(8);
#endif
    auto tfidf_8 = fit_tfidf(sc.train_tokens, fcfg);
    auto x_8 = transform_corpus(tfidf_8, sc.train_tokens);
    auto model_8 = train_one_vs_rest(x_8, sc.train_labels, tfidf_8.vocabulary.size(), tcfg);
    auto report_8 = evaluate(model_8, tfidf_8, tfidf_8.preprocess_config, sc.test, prov);
    std::string bytes_8 = model_bytes(tfidf_8, model_8);

#ifdef _OPENMP
    omp_set_num_threads(omp_get_num_procs());
#endif

    CHECK(tfidf_1.vocabulary.terms == tfidf_8.vocabulary.terms);
    CHECK(bytes_1 == bytes_8);
    CHECK(report_1.accuracy == report_8.accuracy);
    CHECK(report_1.confusion == report_8.confusion);

    // and both agree with the serial reference implementations
    auto tfidf_s = fit_tfidf_serial(sc.train_tokens, fcfg);
    auto x_s = transform_corpus_serial(tfidf_s, sc.train_tokens);
    auto model_s = train_one_vs_rest_serial(x_s, sc.train_labels, tfidf_s.vocabulary.size(), tcfg);
    auto report_s = evaluate_serial(model_s, tfidf_s, tfidf_s.preprocess_config, sc.test, prov);
    CHECK(model_bytes(tfidf_s, model_s) == bytes_1);
    CHECK(report_s.confusion == report_1.confusion);
}
