#include "lintext/explain.hpp"

#include <algorithm>
#include <cmath>

#include "lintext/common.hpp"

namespace lintext {

std::vector<Contribution> PredictionExplanation::entries(size_t k) const {
    size_t n = std::min(k, contributions.size());
    return {contributions.begin(), contributions.begin() + static_cast<ptrdiff_t>(n)};
}

ClassExplanation top_class_features(const MulticlassLinearModel& model, const Vocabulary& vocab,
                                    const std::string& cls, size_t k) {
    auto it = std::lower_bound(model.classes.begin(), model.classes.end(), cls);
    if (it == model.classes.end() || *it != cls) throw DataError("unknown class: " + cls);
    const auto& weights = model.binaries[it - model.classes.begin()].weights;

    std::vector<uint32_t> idx(vocab.size());
    for (uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
    size_t n = std::min(k, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<ptrdiff_t>(n), idx.end(),
                      [&](uint32_t a, uint32_t b) {
                          if (weights[a] != weights[b]) return weights[a] > weights[b];
                          return vocab.terms[a] < vocab.terms[b];
                      });

    ClassExplanation out;
    out.cls = cls;
    out.entries.reserve(n);
    for (size_t i = 0; i < n; ++i) out.entries.emplace_back(vocab.terms[idx[i]], weights[idx[i]]);
    return out;
}

namespace {

PredictionExplanation decompose(const MulticlassLinearModel& model, const TfidfModel& tfidf,
                                const SparseVector& x, size_t class_index, size_t k) {
    const BinaryModel& binary = model.binaries[class_index];
    std::vector<double> scores = decision_scores(model, x);

    PredictionExplanation out;
    out.predicted_class = model.classes[class_index];
    out.score = scores[class_index];
    out.bias_contribution = binary.bias;
    out.top_k = k;
    out.contributions.reserve(x.nnz());
    double sum = 0.0;
    for (size_t j = 0; j < x.indices.size(); ++j) {
        Contribution c;
        c.term = tfidf.vocabulary.terms[x.indices[j]];
        c.tfidf_value = x.values[j];
        c.weight = binary.weights[x.indices[j]];
        c.product = c.weight * c.tfidf_value;
        sum += c.product;
        out.contributions.push_back(std::move(c));
    }
    std::sort(out.contributions.begin(), out.contributions.end(),
              [](const Contribution& a, const Contribution& b) {
                  double ma = std::fabs(a.product), mb = std::fabs(b.product);
                  if (ma != mb) return ma > mb;
                  return a.term < b.term;
              });
    out.residual_check = std::fabs(out.score - out.bias_contribution - sum);
    return out;
}

}  // namespace

PredictionExplanation explain_prediction(const MulticlassLinearModel& model,
                                         const TfidfModel& tfidf,
                                         const PreprocessConfig& preprocess, std::string_view text,
                                         size_t k) {
    SparseVector x = transform(tfidf, clean_and_tokenize(text, preprocess));
    return decompose(model, tfidf, x, predict_index(model, x), k);
}

PredictionExplanation explain_class_score(const MulticlassLinearModel& model,
                                          const TfidfModel& tfidf,
                                          const PreprocessConfig& preprocess,
                                          std::string_view text, size_t k,
                                          const std::string& cls) {
    auto it = std::lower_bound(model.classes.begin(), model.classes.end(), cls);
    if (it == model.classes.end() || *it != cls) throw DataError("unknown class: " + cls);
    SparseVector x = transform(tfidf, clean_and_tokenize(text, preprocess));
    return decompose(model, tfidf, x, static_cast<size_t>(it - model.classes.begin()), k);
}

}  // namespace lintext
