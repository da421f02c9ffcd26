// Compares the OpenMP kernels against their serial reference implementations
// on a synthetic corpus: wall time for each, plus an equality check (the
// parallel paths are required to be bit-identical to the serial ones).
//
// Usage: bench_kernels [n_docs] [tokens_per_doc]

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lintext/eval.hpp"
#include "lintext/model_io.hpp"

using namespace lintext;
namespace chrono = std::chrono;

namespace {

double seconds_since(chrono::steady_clock::time_point start) {
    return chrono::duration<double>(chrono::steady_clock::now() - start).count();
}

std::vector<TokenSequence> synthetic_corpus(size_t n_docs, size_t tokens_per_doc,
                                            std::vector<std::string>* labels) {
    std::mt19937_64 rng(1234);
    const char* pools[4][6] = {
        {"vpn", "dns", "router", "firewall", "gateway", "subnet"},
        {"query", "index", "shard", "replica", "schema", "deadlock"},
        {"token", "login", "session", "password", "oauth", "kerberos"},
        {"disk", "volume", "snapshot", "raid", "mount", "quota"},
    };
    std::vector<std::string> lexicon;
    for (int i = 0; i < 400; ++i) lexicon.push_back("w" + std::to_string(i));

    std::vector<TokenSequence> docs;
    docs.reserve(n_docs);
    for (size_t d = 0; d < n_docs; ++d) {
        size_t cls = d % 4;
        TokenSequence doc;
        doc.reserve(tokens_per_doc);
        for (size_t k = 0; k < tokens_per_doc; ++k) {
            if (k % 7 == 0) {
                doc.push_back(pools[cls][rng() % 6]);
            } else {
                doc.push_back(lexicon[rng() % lexicon.size()]);
            }
        }
        docs.push_back(std::move(doc));
        labels->push_back("class" + std::to_string(cls));
    }
    return docs;
}

}  // namespace

int main(int argc, char** argv) {
    size_t n_docs = argc > 1 ? std::stoul(argv[1]) : 4000;
    size_t tokens_per_doc = argc > 2 ? std::stoul(argv[2]) : 120;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
    std::printf("corpus: %zu docs x %zu tokens\n\n", n_docs, tokens_per_doc);

    std::vector<std::string> labels;
    auto corpus = synthetic_corpus(n_docs, tokens_per_doc, &labels);
    FeatureConfig fcfg;  // 1..3-grams, min_df 2
    TrainConfig tcfg;
    tcfg.seed = 42;

    std::printf("%-22s %10s %10s %8s  %s\n", "kernel", "serial(s)", "openmp(s)", "speedup",
                "identical");

    auto t0 = chrono::steady_clock::now();
    auto tfidf_s = fit_tfidf_serial(corpus, fcfg);
    double fit_serial = seconds_since(t0);
    t0 = chrono::steady_clock::now();
    auto tfidf_p = fit_tfidf(corpus, fcfg);
    double fit_parallel = seconds_since(t0);
    bool fit_same = tfidf_s.vocabulary.terms == tfidf_p.vocabulary.terms &&
                    tfidf_s.idf == tfidf_p.idf;
    std::printf("%-22s %10.3f %10.3f %8.2fx  %s\n", "fit_tfidf (df count)", fit_serial,
                fit_parallel, fit_serial / fit_parallel, fit_same ? "yes" : "NO");

    t0 = chrono::steady_clock::now();
    auto xs = transform_corpus_serial(tfidf_s, corpus);
    double tr_serial = seconds_since(t0);
    t0 = chrono::steady_clock::now();
    auto xp = transform_corpus(tfidf_p, corpus);
    double tr_parallel = seconds_since(t0);
    bool tr_same = xs.size() == xp.size();
    for (size_t d = 0; tr_same && d < xs.size(); ++d) {
        tr_same = xs[d].indices == xp[d].indices && xs[d].values == xp[d].values;
    }
    std::printf("%-22s %10.3f %10.3f %8.2fx  %s\n", "transform_corpus", tr_serial, tr_parallel,
                tr_serial / tr_parallel, tr_same ? "yes" : "NO");

    size_t v = tfidf_s.vocabulary.size();
    t0 = chrono::steady_clock::now();
    auto model_s = train_one_vs_rest_serial(xs, labels, v, tcfg);
    double ovr_serial = seconds_since(t0);
    t0 = chrono::steady_clock::now();
    auto model_p = train_one_vs_rest(xp, labels, v, tcfg);
    double ovr_parallel = seconds_since(t0);
    bool ovr_same = true;
    for (size_t c = 0; ovr_same && c < model_s.binaries.size(); ++c) {
        ovr_same = model_s.binaries[c].weights == model_p.binaries[c].weights;
    }
    std::printf("%-22s %10.3f %10.3f %8.2fx  %s\n", "train_one_vs_rest", ovr_serial, ovr_parallel,
                ovr_serial / ovr_parallel, ovr_same ? "yes" : "NO");

    // batch prediction via evaluate over a corpus of raw documents
    std::vector<Document> eval_docs;
    for (size_t d = 0; d < corpus.size(); ++d) {
        std::string text;
        for (const auto& tok : corpus[d]) {
            text += tok;
            text += ' ';
        }
        eval_docs.push_back({"d" + std::to_string(d), text, labels[d]});
    }
    auto test = LabeledCorpus::from_documents(std::move(eval_docs));
    EvalProvenance prov{"Bench", 42, 0.0, "bench"};
    t0 = chrono::steady_clock::now();
    auto rep_s = evaluate_serial(model_s, tfidf_s, tfidf_s.preprocess_config, test, prov);
    double ev_serial = seconds_since(t0);
    t0 = chrono::steady_clock::now();
    auto rep_p = evaluate(model_p, tfidf_p, tfidf_p.preprocess_config, test, prov);
    double ev_parallel = seconds_since(t0);
    bool ev_same = rep_s.confusion == rep_p.confusion;
    std::printf("%-22s %10.3f %10.3f %8.2fx  %s\n", "evaluate (predict)", ev_serial, ev_parallel,
                ev_serial / ev_parallel, ev_same ? "yes" : "NO");

    bool all_same = fit_same && tr_same && ovr_same && ev_same;
    std::printf("\ntrain accuracy (sanity): %.4f, all kernels identical: %s\n", rep_p.accuracy,
                all_same ? "yes" : "NO");
    return all_same ? 0 : 1;
}
