#include "lintext/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lintext/common.hpp"

namespace lintext {

namespace {

void check_feature_config(const FeatureConfig& config) {
    if (config.ngram_min < 1 || config.ngram_max < config.ngram_min) {
        throw DataError("invalid n-gram range [" + std::to_string(config.ngram_min) + "," +
                        std::to_string(config.ngram_max) + "]");
    }
    if (config.min_df < 1) throw DataError("min_df must be >= 1");
    if (!(config.max_df_ratio > 0.0 && config.max_df_ratio <= 1.0)) {
        throw DataError("max_df_ratio must be in (0,1]");
    }
}

template <typename Fn>
void for_each_ngram(const TokenSequence& tokens, int nmin, int nmax, Fn&& fn) {
    std::string gram;
    for (int n = nmin; n <= nmax; ++n) {
        if (tokens.size() < static_cast<size_t>(n)) break;
        for (size_t start = 0; start + n <= tokens.size(); ++start) {
            gram.clear();
            for (int k = 0; k < n; ++k) {
                if (k > 0) gram.push_back(' ');
                gram += tokens[start + k];
            }
            fn(gram);
        }
    }
}

double idf_weight(uint64_t n_documents, uint32_t df) {
    return std::log((1.0 + static_cast<double>(n_documents)) / (1.0 + static_cast<double>(df))) +
           1.0;
}

TfidfModel assemble_model(std::vector<std::pair<std::string, uint32_t>> term_df,
                          uint64_t n_documents, const FeatureConfig& config,
                          const PreprocessConfig& preprocess_config) {
    const double max_df = config.max_df_ratio * static_cast<double>(n_documents);
    std::erase_if(term_df, [&](const auto& td) {
        return td.second < static_cast<uint32_t>(config.min_df) ||
               static_cast<double>(td.second) > max_df;
    });
    if (term_df.empty()) {
        throw DataError("empty vocabulary after pruning (min_df=" + std::to_string(config.min_df) +
                        ", max_df_ratio=" + std::to_string(config.max_df_ratio) + ")");
    }
    std::sort(term_df.begin(), term_df.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    TfidfModel model;
    model.config = config;
    model.preprocess_config = preprocess_config;
    model.vocabulary.n_documents = n_documents;
    model.vocabulary.terms.reserve(term_df.size());
    model.vocabulary.document_frequency.reserve(term_df.size());
    model.idf.reserve(term_df.size());
    for (auto& [term, df] : term_df) {
        model.vocabulary.terms.push_back(std::move(term));
        model.vocabulary.document_frequency.push_back(df);
        model.idf.push_back(idf_weight(n_documents, df));
    }
    return model;
}

}  // namespace

double SparseVector::l2_norm() const {
    double sq = 0.0;
    for (double v : values) sq += v * v;
    return std::sqrt(sq);
}

std::optional<uint32_t> Vocabulary::index_of(std::string_view term) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), term);
    if (it == terms.end() || *it != term) return std::nullopt;
    return static_cast<uint32_t>(it - terms.begin());
}

std::vector<std::string> extract_ngrams(const TokenSequence& tokens, int ngram_min,
                                        int ngram_max) {
    if (ngram_min < 1 || ngram_max < ngram_min) {
        throw DataError("invalid n-gram range");
    }
    std::vector<std::string> out;
    for_each_ngram(tokens, ngram_min, ngram_max,
                   [&](const std::string& gram) { out.push_back(gram); });
    return out;
}

TfidfModel fit_tfidf_serial(const std::vector<TokenSequence>& training_sequences,
                            const FeatureConfig& config,
                            const PreprocessConfig& preprocess_config) {
    check_feature_config(config);
    if (training_sequences.empty()) throw DataError("fit_tfidf requires at least one document");

    std::unordered_map<std::string, uint32_t> df;
    std::unordered_set<std::string> doc_terms;
    for (const auto& tokens : training_sequences) {
        doc_terms.clear();
        for_each_ngram(tokens, config.ngram_min, config.ngram_max,
                       [&](const std::string& gram) { doc_terms.insert(gram); });
        for (const auto& term : doc_terms) ++df[term];
    }
    std::vector<std::pair<std::string, uint32_t>> term_df(df.begin(), df.end());
    return assemble_model(std::move(term_df), training_sequences.size(), config,
                          preprocess_config);
}

TfidfModel fit_tfidf(const std::vector<TokenSequence>& training_sequences,
                     const FeatureConfig& config, const PreprocessConfig& preprocess_config) {
    check_feature_config(config);
    if (training_sequences.empty()) throw DataError("fit_tfidf requires at least one document");
    const auto n_docs = static_cast<int64_t>(training_sequences.size());

    // Pass 1: document frequencies of 64-bit term hashes. Hash counts
    // dominate exact counts, so filtering on df_hash >= min_df keeps every
    // term whose exact df reaches min_df; collisions can only admit extra
    // candidates into pass 2, where exact counting settles them.
    std::unordered_map<uint64_t, uint32_t> hash_df;
    if (config.min_df > 1) {
        #pragma omp parallel
        {
            std::unordered_map<uint64_t, uint32_t> local;
            std::unordered_set<uint64_t> doc_hashes;
            #pragma omp for schedule(dynamic, 64) nowait
            for (int64_t d = 0; d < n_docs; ++d) {
                doc_hashes.clear();
                for_each_ngram(training_sequences[d], config.ngram_min, config.ngram_max,
                               [&](const std::string& gram) { doc_hashes.insert(fnv1a64(gram)); });
                for (uint64_t h : doc_hashes) ++local[h];
            }
            #pragma omp critical
            {
                for (const auto& [h, c] : local) hash_df[h] += c;
            }
        }
    }

    // Pass 2: exact string counts for surviving candidates.
    const auto min_df = static_cast<uint32_t>(config.min_df);
    auto candidate = [&](const std::string& gram) {
        if (config.min_df <= 1) return true;
        auto it = hash_df.find(fnv1a64(gram));
        return it != hash_df.end() && it->second >= min_df;
    };
    std::unordered_map<std::string, uint32_t> df;
    #pragma omp parallel
    {
        std::unordered_map<std::string, uint32_t> local;
        std::unordered_set<std::string> doc_terms;
        #pragma omp for schedule(dynamic, 64) nowait
        for (int64_t d = 0; d < n_docs; ++d) {
            doc_terms.clear();
            for_each_ngram(training_sequences[d], config.ngram_min, config.ngram_max,
                           [&](const std::string& gram) {
                               if (candidate(gram)) doc_terms.insert(gram);
                           });
            for (const auto& term : doc_terms) ++local[term];
        }
        #pragma omp critical
        {
            for (auto& [term, c] : local) df[term] += c;
        }
    }

    std::vector<std::pair<std::string, uint32_t>> term_df;
    term_df.reserve(df.size());
    for (auto& [term, c] : df) term_df.emplace_back(term, c);
    return assemble_model(std::move(term_df), training_sequences.size(), config,
                          preprocess_config);
}

SparseVector transform(const TfidfModel& model, const TokenSequence& tokens) {
    std::unordered_map<uint32_t, uint32_t> tf;
    for_each_ngram(tokens, model.config.ngram_min, model.config.ngram_max,
                   [&](const std::string& gram) {
                       if (auto idx = model.vocabulary.index_of(gram)) ++tf[*idx];
                   });
    SparseVector vec;
    vec.indices.reserve(tf.size());
    for (const auto& [idx, count] : tf) vec.indices.push_back(idx);
    std::sort(vec.indices.begin(), vec.indices.end());
    vec.values.reserve(vec.indices.size());
    double sq_norm = 0.0;
    for (uint32_t idx : vec.indices) {
        double t = static_cast<double>(tf.at(idx));
        if (model.config.sublinear_tf) t = 1.0 + std::log(t);
        double w = t * model.idf[idx];
        vec.values.push_back(w);
        sq_norm += w * w;
    }
    if (sq_norm > 0.0) {
        double inv = 1.0 / std::sqrt(sq_norm);
        for (double& v : vec.values) v *= inv;
    }
    return vec;
}

std::vector<SparseVector> transform_corpus_serial(const TfidfModel& model,
                                                  const std::vector<TokenSequence>& sequences) {
    std::vector<SparseVector> out(sequences.size());
    for (size_t d = 0; d < sequences.size(); ++d) out[d] = transform(model, sequences[d]);
    return out;
}

std::vector<SparseVector> transform_corpus(const TfidfModel& model,
                                           const std::vector<TokenSequence>& sequences) {
    std::vector<SparseVector> out(sequences.size());
    const auto n = static_cast<int64_t>(sequences.size());
    #pragma omp parallel for schedule(dynamic, 64)
    for (int64_t d = 0; d < n; ++d) {
        out[d] = transform(model, sequences[d]);
    }
    return out;
}

}  // namespace lintext
