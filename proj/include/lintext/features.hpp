#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lintext/preprocess.hpp"

namespace lintext {

struct FeatureConfig {
    int ngram_min = 1;
    int ngram_max = 3;
    int min_df = 2;               // minimum document frequency for vocabulary inclusion
    double max_df_ratio = 1.0;    // terms in more than this fraction of documents are excluded
    bool sublinear_tf = false;    // weight (1+ln tf)*idf instead of tf*idf
};

// Strictly increasing indices, nonzero values; unit L2 norm after transform.
struct SparseVector {
    std::vector<uint32_t> indices;
    std::vector<double> values;

    size_t nnz() const { return indices.size(); }
    double l2_norm() const;
};

// Terms in lexicographic order; index i <-> terms[i].
struct Vocabulary {
    std::vector<std::string> terms;
    std::vector<uint32_t> document_frequency;
    uint64_t n_documents = 0;

    size_t size() const { return terms.size(); }
    std::optional<uint32_t> index_of(std::string_view term) const;  // binary search
};

struct TfidfModel {
    Vocabulary vocabulary;
    std::vector<double> idf;  // idf[t] = ln((1+N)/(1+df(t))) + 1, always >= 1
    FeatureConfig config;
    PreprocessConfig preprocess_config;
};

using TokenSequence = std::vector<std::string>;

// Windows of n consecutive tokens joined by single spaces, for each n in
// [ngram_min, ngram_max], unigrams-first.
std::vector<std::string> extract_ngrams(const TokenSequence& tokens, int ngram_min, int ngram_max);

// Vocabulary = every n-gram with min_df <= df <= max_df_ratio*N, indexed in
// lexicographic term order. Parallelizes document-frequency counting over
// documents; counts are exact integers, so the result is independent of
// thread count and bit-identical to fit_tfidf_serial.
TfidfModel fit_tfidf(const std::vector<TokenSequence>& training_sequences,
                     const FeatureConfig& config, const PreprocessConfig& preprocess_config = {});

// Single-threaded reference implementation, kept for tests and benchmarks.
TfidfModel fit_tfidf_serial(const std::vector<TokenSequence>& training_sequences,
                            const FeatureConfig& config,
                            const PreprocessConfig& preprocess_config = {});

// tf(t) counted over the document's in-vocabulary n-grams, weighted by idf,
// L2-normalized. Out-of-vocabulary n-grams are ignored; a document with no
// in-vocabulary terms maps to the empty vector.
SparseVector transform(const TfidfModel& model, const TokenSequence& tokens);

// Batch transform: OpenMP over documents (each document independent).
std::vector<SparseVector> transform_corpus(const TfidfModel& model,
                                           const std::vector<TokenSequence>& sequences);
std::vector<SparseVector> transform_corpus_serial(const TfidfModel& model,
                                                  const std::vector<TokenSequence>& sequences);

}  // namespace lintext
