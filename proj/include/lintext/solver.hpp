#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lintext/features.hpp"

namespace lintext {

enum class Loss { kHinge, kSquaredHinge };

std::string loss_name(Loss loss);
Loss loss_from_name(const std::string& name);

struct TrainConfig {
    double C = 1.0;
    Loss loss = Loss::kSquaredHinge;
    double tolerance = 1e-4;  // stop when an epoch's max |projected gradient| falls below
    int max_epochs = 1000;
    uint64_t seed = 0;
    double bias_scale = 1.0;  // 0 disables the bias feature
};

// Linear SVM over the feature space plus (when bias_scale > 0) one appended
// constant coordinate of value bias_scale.
struct BinaryModel {
    std::vector<double> weights;  // length n_features (+1 with bias)
    double bias = 0.0;            // weights.back() * bias_scale, 0 without bias
    std::vector<double> dual_variables;
    bool converged = false;
    int epochs_run = 0;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
};

struct MulticlassLinearModel {
    std::vector<std::string> classes;      // sorted, duplicate-free
    std::vector<BinaryModel> binaries;     // parallel to classes
    TrainConfig config;
    size_t n_features = 0;
    double train_seconds = 0.0;            // in-memory metadata, never serialized
};

// Called after every coordinate update; for convergence-property tests.
using UpdateObserver = std::function<void(const std::vector<double>& alpha,
                                          const std::vector<double>& weights)>;

// Dual coordinate descent for min_alpha 1/2 a^T Qbar a - sum a, with
// Qbar_ij = y_i y_j x_i.x_j + D delta_ij; hinge: D=0, box [0,C]; squared
// hinge: D=1/(2C), box [0,inf). Examples are visited in a fresh seeded
// permutation each epoch; an epoch whose max |projected gradient| drops
// below tolerance terminates with converged=true. Examples whose augmented
// vector is zero are excluded. The returned weights are reconstructed as
// sum_i alpha_i y_i x_i in ascending example order.
BinaryModel train_binary(const std::vector<SparseVector>& X, const std::vector<int8_t>& y,
                         size_t n_features, const TrainConfig& config,
                         const UpdateObserver* observer = nullptr);

// One binary problem per class in sorted order, positive label = the class,
// seed = config.seed XOR fnv1a64(class). Classes are independent, so the
// OpenMP version is bit-identical to the serial one at any thread count.
MulticlassLinearModel train_one_vs_rest(const std::vector<SparseVector>& X,
                                        const std::vector<std::string>& labels, size_t n_features,
                                        const TrainConfig& config);
MulticlassLinearModel train_one_vs_rest_serial(const std::vector<SparseVector>& X,
                                               const std::vector<std::string>& labels,
                                               size_t n_features, const TrainConfig& config);

// score_c = w_c.x + bias_c for every class (sorted class order).
std::vector<double> decision_scores(const MulticlassLinearModel& model, const SparseVector& x);

// argmax of decision_scores; ties break toward the lexicographically
// smallest class.
const std::string& predict(const MulticlassLinearModel& model, const SparseVector& x);
size_t predict_index(const MulticlassLinearModel& model, const SparseVector& x);

// Primal 1/2||w||^2 + C sum loss(y_i w.x_i) evaluated at w; dual
// -(1/2 a^T Qbar a - sum a) evaluated at alpha. Throws on box-infeasible
// alpha.
std::pair<double, double> objectives(const std::vector<SparseVector>& X,
                                     const std::vector<int8_t>& y,
                                     const std::vector<double>& alpha,
                                     const std::vector<double>& weights,
                                     const TrainConfig& config);

}  // namespace lintext
