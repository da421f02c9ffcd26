#include "lintext/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lintext/common.hpp"

namespace lintext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// w and x are over the augmented space: index n_features is the bias
// coordinate with constant value bias_scale.
double dot_augmented(const std::vector<double>& w, const SparseVector& x, size_t n_features,
                     double bias_scale) {
    double s = 0.0;
    for (size_t k = 0; k < x.indices.size(); ++k) s += w[x.indices[k]] * x.values[k];
    if (bias_scale > 0.0) s += w[n_features] * bias_scale;
    return s;
}

void axpy_augmented(double a, const SparseVector& x, std::vector<double>& w, size_t n_features,
                    double bias_scale) {
    for (size_t k = 0; k < x.indices.size(); ++k) w[x.indices[k]] += a * x.values[k];
    if (bias_scale > 0.0) w[n_features] += a * bias_scale;
}

double squared_norm_augmented(const SparseVector& x, double bias_scale) {
    double s = bias_scale * bias_scale;
    for (double v : x.values) s += v * v;
    return s;
}

void check_dimensions(const std::vector<SparseVector>& X, size_t n_features) {
    for (const auto& x : X) {
        if (!x.indices.empty() && x.indices.back() >= n_features) {
            throw DataError("feature index " + std::to_string(x.indices.back()) +
                            " out of range for dimension " + std::to_string(n_features));
        }
    }
}

void check_train_config(const TrainConfig& config) {
    if (!(config.C > 0.0)) throw DataError("C must be positive");
    if (!(config.tolerance > 0.0)) throw DataError("tolerance must be positive");
    if (config.max_epochs < 1) throw DataError("max_epochs must be >= 1");
    if (config.bias_scale < 0.0) throw DataError("bias_scale must be nonnegative");
}

}  // namespace

std::string loss_name(Loss loss) {
    return loss == Loss::kHinge ? "hinge" : "squared_hinge";
}

Loss loss_from_name(const std::string& name) {
    if (name == "hinge") return Loss::kHinge;
    if (name == "squared_hinge") return Loss::kSquaredHinge;
    throw DataError("unknown loss: " + name);
}

BinaryModel train_binary(const std::vector<SparseVector>& X, const std::vector<int8_t>& y,
                         size_t n_features, const TrainConfig& config,
                         const UpdateObserver* observer) {
    check_train_config(config);
    if (X.size() != y.size()) throw DataError("examples and labels differ in length");
    check_dimensions(X, n_features);
    bool has_pos = false, has_neg = false;
    for (int8_t yi : y) {
        if (yi == +1) has_pos = true;
        else if (yi == -1) has_neg = true;
        else throw DataError("binary labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) throw DataError("training set must contain both classes");

    const size_t n = X.size();
    const double bias_scale = config.bias_scale;
    const size_t dim = n_features + (bias_scale > 0.0 ? 1 : 0);
    const double diag = config.loss == Loss::kSquaredHinge ? 1.0 / (2.0 * config.C) : 0.0;
    const double upper = config.loss == Loss::kSquaredHinge ? kInf : config.C;

    std::vector<double> qd(n, 0.0);
    std::vector<size_t> order;
    order.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        double sq = squared_norm_augmented(X[i], bias_scale);
        if (sq == 0.0) continue;  // augmented zero vector, alpha pinned at 0
        qd[i] = sq + diag;
        order.push_back(i);
    }
    if (order.empty()) throw DataError("all training vectors are zero");

    BinaryModel model;
    model.weights.assign(dim, 0.0);
    model.dual_variables.assign(n, 0.0);
    std::vector<double>& w = model.weights;
    std::vector<double>& alpha = model.dual_variables;

    std::mt19937_64 rng(config.seed);
    for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
        deterministic_shuffle(order, rng);
        double max_abs_pg = 0.0;
        for (size_t i : order) {
            const double yi = y[i];
            double g = yi * dot_augmented(w, X[i], n_features, bias_scale) - 1.0 +
                       diag * alpha[i];
            double pg = g;
            if (alpha[i] == 0.0 && g >= 0.0) pg = 0.0;
            else if (alpha[i] == upper && g <= 0.0) pg = 0.0;
            max_abs_pg = std::max(max_abs_pg, std::fabs(pg));
            if (pg != 0.0) {
                double old = alpha[i];
                alpha[i] = std::min(std::max(old - g / qd[i], 0.0), upper);
                double delta = (alpha[i] - old) * yi;
                if (delta != 0.0) axpy_augmented(delta, X[i], w, n_features, bias_scale);
                if (observer) (*observer)(alpha, w);
            }
        }
        model.epochs_run = epoch;
        if (max_abs_pg < config.tolerance) {
            model.converged = true;
            break;
        }
    }

    // Reconstruct w from alpha in ascending example order: makes
    // w = sum alpha_i y_i x_i exact and independent of the update history.
    std::fill(w.begin(), w.end(), 0.0);
    for (size_t i = 0; i < n; ++i) {
        if (alpha[i] != 0.0) axpy_augmented(alpha[i] * y[i], X[i], w, n_features, bias_scale);
    }
    model.bias = bias_scale > 0.0 ? w[n_features] * bias_scale : 0.0;

    auto [primal, dual] = objectives(X, y, alpha, w, config);
    model.primal_objective = primal;
    model.dual_objective = dual;
    return model;
}

std::pair<double, double> objectives(const std::vector<SparseVector>& X,
                                     const std::vector<int8_t>& y,
                                     const std::vector<double>& alpha,
                                     const std::vector<double>& weights,
                                     const TrainConfig& config) {
    if (X.size() != y.size() || X.size() != alpha.size()) {
        throw DataError("objectives: mismatched lengths");
    }
    const double diag = config.loss == Loss::kSquaredHinge ? 1.0 / (2.0 * config.C) : 0.0;
    const double upper = config.loss == Loss::kSquaredHinge ? kInf : config.C;
    for (double a : alpha) {
        if (a < 0.0 || a > upper) throw DataError("objectives: alpha outside the feasible box");
    }
    const size_t n_features = weights.size() - (config.bias_scale > 0.0 ? 1 : 0);

    double primal = 0.0;
    for (double wj : weights) primal += wj * wj;
    primal *= 0.5;
    for (size_t i = 0; i < X.size(); ++i) {
        double margin = y[i] * dot_augmented(weights, X[i], n_features, config.bias_scale);
        double viol = std::max(0.0, 1.0 - margin);
        primal += config.C * (config.loss == Loss::kSquaredHinge ? viol * viol : viol);
    }

    // dual of alpha: recompute w_alpha = sum alpha_i y_i x_i so the value is
    // a function of alpha alone.
    std::vector<double> w_alpha(weights.size(), 0.0);
    double sum_alpha = 0.0, sum_diag = 0.0;
    for (size_t i = 0; i < X.size(); ++i) {
        if (alpha[i] != 0.0) {
            axpy_augmented(alpha[i] * y[i], X[i], w_alpha, n_features, config.bias_scale);
        }
        sum_alpha += alpha[i];
        sum_diag += diag * alpha[i] * alpha[i];
    }
    double sq = 0.0;
    for (double wj : w_alpha) sq += wj * wj;
    double dual = sum_alpha - 0.5 * (sq + sum_diag);
    return {primal, dual};
}

namespace {

BinaryModel train_for_class(const std::vector<SparseVector>& X,
                            const std::vector<std::string>& labels, const std::string& cls,
                            size_t n_features, const TrainConfig& config) {
    std::vector<int8_t> y(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) y[i] = labels[i] == cls ? +1 : -1;
    TrainConfig class_config = config;
    class_config.seed = config.seed ^ fnv1a64(cls);
    return train_binary(X, y, n_features, class_config);
}

std::vector<std::string> sorted_classes(const std::vector<std::string>& labels) {
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() < 2) throw DataError("one-vs-rest needs at least 2 distinct classes");
    return {distinct.begin(), distinct.end()};
}

}  // namespace

MulticlassLinearModel train_one_vs_rest_serial(const std::vector<SparseVector>& X,
                                               const std::vector<std::string>& labels,
                                               size_t n_features, const TrainConfig& config) {
    auto start = std::chrono::steady_clock::now();
    MulticlassLinearModel model;
    model.classes = sorted_classes(labels);
    model.config = config;
    model.n_features = n_features;
    model.binaries.resize(model.classes.size());
    for (size_t c = 0; c < model.classes.size(); ++c) {
        model.binaries[c] = train_for_class(X, labels, model.classes[c], n_features, config);
    }
    model.train_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return model;
}

MulticlassLinearModel train_one_vs_rest(const std::vector<SparseVector>& X,
                                        const std::vector<std::string>& labels, size_t n_features,
                                        const TrainConfig& config) {
    auto start = std::chrono::steady_clock::now();
    MulticlassLinearModel model;
    model.classes = sorted_classes(labels);
    model.config = config;
    model.n_features = n_features;
    model.binaries.resize(model.classes.size());
    const auto k = static_cast<int64_t>(model.classes.size());
    #pragma omp parallel for schedule(dynamic, 1)
    for (int64_t c = 0; c < k; ++c) {
        model.binaries[c] = train_for_class(X, labels, model.classes[c], n_features, config);
    }
    model.train_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return model;
}

std::vector<double> decision_scores(const MulticlassLinearModel& model, const SparseVector& x) {
    if (!x.indices.empty() && x.indices.back() >= model.n_features) {
        throw DataError("feature index " + std::to_string(x.indices.back()) +
                        " out of range for model dimension " + std::to_string(model.n_features));
    }
    std::vector<double> scores(model.classes.size());
    for (size_t c = 0; c < model.binaries.size(); ++c) {
        const auto& w = model.binaries[c].weights;
        double s = 0.0;
        for (size_t k = 0; k < x.indices.size(); ++k) s += w[x.indices[k]] * x.values[k];
        scores[c] = s + model.binaries[c].bias;
    }
    return scores;
}

size_t predict_index(const MulticlassLinearModel& model, const SparseVector& x) {
    std::vector<double> scores = decision_scores(model, x);
    size_t best = 0;
    for (size_t c = 1; c < scores.size(); ++c) {
        if (scores[c] > scores[best]) best = c;  // ties keep the smaller class
    }
    return best;
}

const std::string& predict(const MulticlassLinearModel& model, const SparseVector& x) {
    return model.classes[predict_index(model, x)];
}

}  // namespace lintext
