#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lintext/corpus.hpp"
#include "lintext/solver.hpp"

namespace lintext {

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool degenerate = false;  // a zero denominator contributed 0 by convention
};

struct EvalReport {
    std::string dataset_name_with_class_count;  // e.g. "20NewsGroup-20"
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    std::vector<std::string> classes;
    std::vector<ClassMetrics> per_class;
    std::vector<std::vector<uint64_t>> confusion;  // rows = gold, columns = predicted
    uint64_t n_test = 0;
    uint64_t split_seed = 0;
    double train_fraction = 0.0;
    std::string config_digest;
    std::vector<uint8_t> solver_converged;  // per class
};

// Provenance stamped into every report.
struct EvalProvenance {
    std::string dataset_name;  // without the class-count suffix
    uint64_t split_seed = 0;
    double train_fraction = 0.0;
    std::string config_digest;
};

// entry (i,j) counts documents with gold classes[i] predicted classes[j].
std::vector<std::vector<uint64_t>> confusion_matrix(const std::vector<std::string>& gold,
                                                    const std::vector<std::string>& predicted,
                                                    const std::vector<std::string>& classes);

// Unweighted mean of per-class F1; zero-denominator classes contribute 0.
double macro_f1(const std::vector<std::vector<uint64_t>>& confusion);
std::vector<ClassMetrics> per_class_metrics(const std::vector<std::vector<uint64_t>>& confusion);

// Cleans, tokenizes, transforms and predicts every test document (OpenMP
// over documents, ordered tally). Test labels must be drawn from the
// model's classes. The report name is dataset_name + "-" + class count.
EvalReport evaluate(const MulticlassLinearModel& model, const TfidfModel& tfidf,
                    const PreprocessConfig& preprocess, const LabeledCorpus& test,
                    const EvalProvenance& provenance);
EvalReport evaluate_serial(const MulticlassLinearModel& model, const TfidfModel& tfidf,
                           const PreprocessConfig& preprocess, const LabeledCorpus& test,
                           const EvalProvenance& provenance);

}  // namespace lintext
