#include "lintext/eval.hpp"

#include <algorithm>
#include <unordered_map>

#include "lintext/common.hpp"

namespace lintext {

std::vector<std::vector<uint64_t>> confusion_matrix(const std::vector<std::string>& gold,
                                                    const std::vector<std::string>& predicted,
                                                    const std::vector<std::string>& classes) {
    if (gold.size() != predicted.size()) {
        throw DataError("confusion_matrix: gold and predicted lengths differ");
    }
    std::unordered_map<std::string, size_t> index;
    for (size_t c = 0; c < classes.size(); ++c) index[classes[c]] = c;
    std::vector<std::vector<uint64_t>> m(classes.size(),
                                         std::vector<uint64_t>(classes.size(), 0));
    for (size_t i = 0; i < gold.size(); ++i) {
        auto gi = index.find(gold[i]);
        auto pi = index.find(predicted[i]);
        if (gi == index.end()) throw DataError("unknown gold label: " + gold[i]);
        if (pi == index.end()) throw DataError("unknown predicted label: " + predicted[i]);
        ++m[gi->second][pi->second];
    }
    return m;
}

std::vector<ClassMetrics> per_class_metrics(const std::vector<std::vector<uint64_t>>& confusion) {
    const size_t k = confusion.size();
    std::vector<ClassMetrics> out(k);
    for (size_t c = 0; c < k; ++c) {
        uint64_t row_sum = 0, col_sum = 0;
        for (size_t j = 0; j < k; ++j) {
            row_sum += confusion[c][j];
            col_sum += confusion[j][c];
        }
        const double tp = static_cast<double>(confusion[c][c]);
        ClassMetrics& cm = out[c];
        cm.precision = col_sum > 0 ? tp / static_cast<double>(col_sum) : 0.0;
        cm.recall = row_sum > 0 ? tp / static_cast<double>(row_sum) : 0.0;
        if (cm.precision + cm.recall > 0.0) {
            cm.f1 = 2.0 * cm.precision * cm.recall / (cm.precision + cm.recall);
        } else {
            cm.f1 = 0.0;
            cm.degenerate = true;
        }
        if (row_sum == 0 || col_sum == 0) cm.degenerate = true;
    }
    return out;
}

double macro_f1(const std::vector<std::vector<uint64_t>>& confusion) {
    if (confusion.empty()) return 0.0;
    auto metrics = per_class_metrics(confusion);
    double sum = 0.0;
    for (const auto& cm : metrics) sum += cm.f1;
    return sum / static_cast<double>(metrics.size());
}

namespace {

EvalReport evaluate_impl(const MulticlassLinearModel& model, const TfidfModel& tfidf,
                         const PreprocessConfig& preprocess, const LabeledCorpus& test,
                         const EvalProvenance& provenance, bool parallel) {
    if (test.documents.empty()) throw DataError("empty test corpus");
    for (const auto& cls : test.classes) {
        if (!std::binary_search(model.classes.begin(), model.classes.end(), cls)) {
            throw DataError("test corpus contains label unseen at training time: " + cls);
        }
    }
    const auto n = static_cast<int64_t>(test.documents.size());
    std::vector<size_t> predicted(test.documents.size());
    #pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (int64_t d = 0; d < n; ++d) {
        auto tokens = clean_and_tokenize(test.documents[d].text, preprocess);
        predicted[d] = predict_index(model, transform(tfidf, tokens));
    }

    std::vector<std::string> gold, pred;
    gold.reserve(test.documents.size());
    pred.reserve(test.documents.size());
    for (int64_t d = 0; d < n; ++d) {
        const auto& doc = test.documents[d];
        if (!doc.label) throw DataError("unlabeled document in test corpus: " + doc.id);
        gold.push_back(*doc.label);
        pred.push_back(model.classes[predicted[d]]);
    }

    EvalReport report;
    report.classes = model.classes;
    report.confusion = confusion_matrix(gold, pred, model.classes);
    report.per_class = per_class_metrics(report.confusion);
    report.macro_f1 = macro_f1(report.confusion);
    report.n_test = test.documents.size();
    uint64_t correct = 0;
    for (size_t c = 0; c < report.confusion.size(); ++c) correct += report.confusion[c][c];
    report.accuracy = static_cast<double>(correct) / static_cast<double>(report.n_test);
    report.dataset_name_with_class_count =
        provenance.dataset_name + "-" + std::to_string(model.classes.size());
    report.split_seed = provenance.split_seed;
    report.train_fraction = provenance.train_fraction;
    report.config_digest = provenance.config_digest;
    report.solver_converged.reserve(model.binaries.size());
    for (const auto& b : model.binaries) report.solver_converged.push_back(b.converged ? 1 : 0);
    return report;
}

}  // namespace

EvalReport evaluate(const MulticlassLinearModel& model, const TfidfModel& tfidf,
                    const PreprocessConfig& preprocess, const LabeledCorpus& test,
                    const EvalProvenance& provenance) {
    return evaluate_impl(model, tfidf, preprocess, test, provenance, true);
}

EvalReport evaluate_serial(const MulticlassLinearModel& model, const TfidfModel& tfidf,
                           const PreprocessConfig& preprocess, const LabeledCorpus& test,
                           const EvalProvenance& provenance) {
    return evaluate_impl(model, tfidf, preprocess, test, provenance, false);
}

}  // namespace lintext
