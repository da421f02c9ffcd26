#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lintext/solver.hpp"

namespace lintext {

struct ClassExplanation {
    std::string cls;
    std::vector<std::pair<std::string, double>> entries;  // descending weight
};

struct Contribution {
    std::string term;
    double tfidf_value = 0.0;
    double weight = 0.0;
    double product = 0.0;  // weight * tfidf_value
};

// Exact additive decomposition of a linear decision score. contributions
// covers every nonzero coordinate, sorted by descending |product| (term as
// tiebreak); top_k records how many entries a renderer was asked for.
struct PredictionExplanation {
    std::string predicted_class;
    double score = 0.0;
    std::vector<Contribution> contributions;
    double bias_contribution = 0.0;
    double residual_check = 0.0;  // |score - bias - sum of products|
    size_t top_k = 0;

    // The first min(k, size) contributions; entries for k are a prefix of
    // entries for k+1.
    std::vector<Contribution> entries(size_t k) const;
};

// The k largest weights in the class's weight vector (bias excluded), ties
// broken lexicographically by term.
ClassExplanation top_class_features(const MulticlassLinearModel& model, const Vocabulary& vocab,
                                    const std::string& cls, size_t k);

// Runs the exact prediction path and decomposes the winning score into
// per-term products plus the bias contribution.
PredictionExplanation explain_prediction(const MulticlassLinearModel& model,
                                         const TfidfModel& tfidf,
                                         const PreprocessConfig& preprocess, std::string_view text,
                                         size_t k);

// Same decomposition against one named class's score (predicted_class holds
// that class, not the argmax). Backs the all-classes explanation flag.
PredictionExplanation explain_class_score(const MulticlassLinearModel& model,
                                          const TfidfModel& tfidf,
                                          const PreprocessConfig& preprocess,
                                          std::string_view text, size_t k,
                                          const std::string& cls);

}  // namespace lintext
