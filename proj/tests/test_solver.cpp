#include <doctest.h>

#include <cmath>
#include <random>

#include "lintext/common.hpp"
#include "lintext/solver.hpp"
#include "oracles.hpp"

using namespace lintext;

namespace {

SparseVector sv(std::initializer_list<std::pair<uint32_t, double>> entries) {
    SparseVector v;
    for (const auto& [i, x] : entries) {
        v.indices.push_back(i);
        v.values.push_back(x);
    }
    return v;
}

}  // namespace

TEST_CASE("symmetric separable pair, hinge, no bias") {
    std::vector<SparseVector> X = {sv({{0, 1.0}}), sv({{0, -1.0}})};
    std::vector<int8_t> y = {+1, -1};
    TrainConfig cfg;
    cfg.loss = Loss::kHinge;
    cfg.C = 1.0;
    cfg.bias_scale = 0.0;
    auto model = train_binary(X, y, 2, cfg);
    CHECK(model.converged);
    for (double a : model.dual_variables) {
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
    }
    // both points on the correct side
    CHECK(model.weights[0] > 0.0);
    CHECK(y[0] * model.weights[0] * 1.0 >= 0.0);
    CHECK(y[1] * model.weights[0] * -1.0 >= 0.0);
}

TEST_CASE("dual objective matches projected-gradient oracle on tiny instances") {
    // a fast slice; the acceptance suite runs the full 100-instance sweep
    std::mt19937_64 rng(314159);
    const double kCs[] = {0.1, 1.0, 10.0};
    int checked = 0;
    for (int round = 0; round < 3; ++round) {
        auto inst = oracle::make_tiny_instance(rng);
        for (double C : kCs) {
            for (Loss loss : {Loss::kHinge, Loss::kSquaredHinge}) {
                TrainConfig cfg;
                cfg.C = C;
                cfg.loss = loss;
                cfg.tolerance = 1e-10;
                cfg.max_epochs = 200000;
                cfg.seed = rng();
                cfg.bias_scale = 1.0;
                auto model = train_binary(inst.sparse, inst.y, inst.n_features, cfg);
                std::vector<int> yi(inst.y.begin(), inst.y.end());
                auto ref = oracle::pgd_dual_converged(inst.dense, yi, C,
                                                      loss == Loss::kSquaredHinge,
                                                      cfg.bias_scale);
                CHECK(std::fabs(model.dual_objective - ref.dual_objective) < 1e-6);
                ++checked;
            }
        }
    }
    CHECK(checked == 18);
}

TEST_CASE("weak duality and gap certificate at termination") {
    std::mt19937_64 rng(5150);
    for (int round = 0; round < 20; ++round) {
        auto inst = oracle::make_tiny_instance(rng);
        TrainConfig cfg;
        cfg.seed = rng();
        cfg.loss = (rng() % 2) ? Loss::kHinge : Loss::kSquaredHinge;
        auto model = train_binary(inst.sparse, inst.y, inst.n_features, cfg);
        double p = model.primal_objective, d = model.dual_objective;
        CHECK(p - d >= -1e-9);
        if (model.converged) {
            CHECK((p - d) / std::max(1.0, p) < 1e-2);
        }
    }
}

TEST_CASE("dual is monotone nondecreasing across updates") {
    std::mt19937_64 rng(777);
    for (int round = 0; round < 5; ++round) {
        auto inst = oracle::make_tiny_instance(rng);
        TrainConfig cfg;
        cfg.seed = rng();
        cfg.loss = (round % 2) ? Loss::kHinge : Loss::kSquaredHinge;
        cfg.max_epochs = 30;
        double last_dual = 0.0;  // dual at alpha = 0
        UpdateObserver observer = [&](const std::vector<double>& alpha,
                                      const std::vector<double>& w) {
            auto [p, d] = objectives(inst.sparse, inst.y, alpha, w, cfg);
            CHECK(d >= last_dual - 1e-12);
            CHECK(p - d >= -1e-9);  // weak duality at every iterate
            last_dual = d;
        };
        train_binary(inst.sparse, inst.y, inst.n_features, cfg, &observer);
    }
}

TEST_CASE("weights reconstruct exactly from dual variables") {
    std::mt19937_64 rng(31337);
    auto inst = oracle::make_tiny_instance(rng);
    TrainConfig cfg;
    auto model = train_binary(inst.sparse, inst.y, inst.n_features, cfg);
    std::vector<double> recon(model.weights.size(), 0.0);
    for (size_t i = 0; i < inst.sparse.size(); ++i) {
        double ay = model.dual_variables[i] * inst.y[i];
        for (size_t k = 0; k < inst.sparse[i].indices.size(); ++k) {
            recon[inst.sparse[i].indices[k]] += ay * inst.sparse[i].values[k];
        }
        recon.back() += ay * cfg.bias_scale;
    }
    for (size_t j = 0; j < recon.size(); ++j) {
        CHECK(std::fabs(model.weights[j] - recon[j]) <= 1e-8);
    }
}

TEST_CASE("objectives at the zero point and against dense evaluation") {
    std::vector<SparseVector> X = {sv({{0, 2.0}}), sv({{1, -1.0}}), sv({{0, 1.0}, {1, 1.0}})};
    std::vector<int8_t> y = {+1, -1, +1};
    TrainConfig cfg;
    cfg.loss = Loss::kHinge;
    cfg.C = 2.0;
    cfg.bias_scale = 0.0;
    std::vector<double> alpha(3, 0.0), w(2, 0.0);
    auto [p, d] = objectives(X, y, alpha, w, cfg);
    CHECK(d == 0.0);
    CHECK(p == doctest::Approx(cfg.C * 3.0).epsilon(1e-15));  // all margins violated by 1

    // dense independent evaluation on a feasible nonzero point
    alpha = {0.5, 1.0, 0.25};
    std::vector<double> dense_w(2, 0.0);
    std::vector<std::vector<double>> Xd = {{2.0, 0.0}, {0.0, -1.0}, {1.0, 1.0}};
    for (size_t i = 0; i < 3; ++i) {
        for (size_t f = 0; f < 2; ++f) dense_w[f] += alpha[i] * y[i] * Xd[i][f];
    }
    auto [p2, d2] = objectives(X, y, alpha, dense_w, cfg);
    double norm_sq = dense_w[0] * dense_w[0] + dense_w[1] * dense_w[1];
    double primal_ref = 0.5 * norm_sq;
    for (size_t i = 0; i < 3; ++i) {
        double margin = y[i] * (dense_w[0] * Xd[i][0] + dense_w[1] * Xd[i][1]);
        primal_ref += cfg.C * std::max(0.0, 1.0 - margin);
    }
    double dual_ref = alpha[0] + alpha[1] + alpha[2] - 0.5 * norm_sq;
    CHECK(std::fabs(p2 - primal_ref) <= 1e-10);
    CHECK(std::fabs(d2 - dual_ref) <= 1e-10);

    alpha = {-0.1, 0.0, 0.0};
    CHECK_THROWS_WITH_AS(objectives(X, y, alpha, w, cfg), doctest::Contains("feasible"),
                         DataError);
    alpha = {2.5, 0.0, 0.0};  // above C for hinge
    CHECK_THROWS_AS(objectives(X, y, alpha, w, cfg), DataError);
}

TEST_CASE("train_binary input validation") {
    TrainConfig cfg;
    std::vector<SparseVector> X = {sv({{0, 1.0}}), sv({{0, 2.0}})};
    CHECK_THROWS_WITH_AS(train_binary(X, {+1, +1}, 1, cfg), doctest::Contains("both classes"),
                         DataError);
    CHECK_THROWS_WITH_AS(train_binary(X, {+1, -1}, 0, cfg), doctest::Contains("out of range"),
                         DataError);
    CHECK_THROWS_AS(train_binary(X, {+1}, 1, cfg), DataError);
}

TEST_CASE("one-vs-rest structure and two-class equivalence") {
    std::mt19937_64 rng(808);
    std::vector<SparseVector> X;
    std::vector<std::string> labels;
    std::vector<int8_t> y_binary;
    for (int i = 0; i < 30; ++i) {
        double a = (static_cast<double>(rng() % 100) - 50) / 25.0;
        double b = (static_cast<double>(rng() % 100) - 50) / 25.0;
        X.push_back(sv({{0, a}, {1, b}}));
        bool pos = a + b > 0;
        labels.push_back(pos ? "pos" : "neg");
        y_binary.push_back(pos ? +1 : -1);
    }
    TrainConfig cfg;
    auto model = train_one_vs_rest(X, labels, 2, cfg);
    REQUIRE(model.classes == std::vector<std::string>{"neg", "pos"});
    REQUIRE(model.binaries.size() == 2);

    // two-class one-vs-rest agrees with sign prediction of a direct binary
    TrainConfig bin_cfg = cfg;
    bin_cfg.seed = cfg.seed ^ fnv1a64("pos");
    auto direct = train_binary(X, y_binary, 2, bin_cfg);
    for (const auto& x : X) {
        double score = 0.0;
        for (size_t k = 0; k < x.indices.size(); ++k) score += direct.weights[x.indices[k]] * x.values[k];
        score += direct.bias;
        std::string by_sign = score > 0 ? "pos" : (score < 0 ? "neg" : "neg");
        CHECK(predict(model, x) == by_sign);
    }

    CHECK_THROWS_AS(train_one_vs_rest(X, std::vector<std::string>(30, "same"), 2, cfg), DataError);
}

TEST_CASE("three classes yield three sorted binary models") {
    std::vector<SparseVector> X = {sv({{0, 1.0}}), sv({{1, 1.0}}), sv({{2, 1.0}}),
                                   sv({{0, 0.9}}), sv({{1, 0.9}}), sv({{2, 0.9}})};
    std::vector<std::string> labels = {"c", "a", "b", "c", "a", "b"};
    auto model = train_one_vs_rest(X, labels, 3, TrainConfig{});
    CHECK(model.classes == std::vector<std::string>{"a", "b", "c"});
    CHECK(model.binaries.size() == 3);
    // toy fixture predictions match an exhaustive dense argmax
    for (const auto& x : X) {
        auto scores = decision_scores(model, x);
        size_t best = 0;
        for (size_t c = 1; c < scores.size(); ++c) {
            if (scores[c] > scores[best]) best = c;
        }
        CHECK(predict(model, x) == model.classes[best]);
    }
}

TEST_CASE("parallel one-vs-rest is bit-identical to serial") {
    std::mt19937_64 rng(11);
    std::vector<SparseVector> X;
    std::vector<std::string> labels;
    const char* names[] = {"alpha", "beta", "gamma", "delta"};
    for (int i = 0; i < 60; ++i) {
        auto inst = sv({{static_cast<uint32_t>(rng() % 6), 0.5 + (rng() % 10) / 10.0},
                        {6 + static_cast<uint32_t>(rng() % 4), 1.0}});
        X.push_back(inst);
        labels.push_back(names[rng() % 4]);
    }
    TrainConfig cfg;
    cfg.seed = 99;
    auto mp = train_one_vs_rest(X, labels, 10, cfg);
    auto ms = train_one_vs_rest_serial(X, labels, 10, cfg);
    REQUIRE(mp.classes == ms.classes);
    for (size_t c = 0; c < mp.binaries.size(); ++c) {
        REQUIRE(mp.binaries[c].weights.size() == ms.binaries[c].weights.size());
        for (size_t j = 0; j < mp.binaries[c].weights.size(); ++j) {
            CHECK(mp.binaries[c].weights[j] == ms.binaries[c].weights[j]);
        }
        CHECK(mp.binaries[c].epochs_run == ms.binaries[c].epochs_run);
    }
}

TEST_CASE("training is deterministic for fixed inputs and seed") {
    std::mt19937_64 rng(123);
    auto inst = oracle::make_tiny_instance(rng);
    TrainConfig cfg;
    cfg.seed = 5;
    auto m1 = train_binary(inst.sparse, inst.y, inst.n_features, cfg);
    auto m2 = train_binary(inst.sparse, inst.y, inst.n_features, cfg);
    REQUIRE(m1.weights.size() == m2.weights.size());
    for (size_t j = 0; j < m1.weights.size(); ++j) CHECK(m1.weights[j] == m2.weights[j]);
    for (size_t i = 0; i < m1.dual_variables.size(); ++i) {
        CHECK(m1.dual_variables[i] == m2.dual_variables[i]);
    }
    CHECK(m1.epochs_run == m2.epochs_run);
}

TEST_CASE("decision scores: zero input, sparse-dense agreement, purity") {
    std::vector<SparseVector> X = {sv({{0, 1.0}, {2, 0.5}}), sv({{1, 1.0}}), sv({{3, 1.0}}),
                                   sv({{0, 0.2}, {3, 0.7}})};
    std::vector<std::string> labels = {"p", "q", "p", "q"};
    auto model = train_one_vs_rest(X, labels, 4, TrainConfig{});

    SparseVector empty;
    auto scores = decision_scores(model, empty);
    for (size_t c = 0; c < scores.size(); ++c) CHECK(scores[c] == model.binaries[c].bias);

    for (const auto& x : X) {
        auto s1 = decision_scores(model, x);
        auto s2 = decision_scores(model, x);
        for (size_t c = 0; c < s1.size(); ++c) {
            CHECK(s1[c] == s2[c]);
            // dense dot product
            std::vector<double> dense(4, 0.0);
            for (size_t k = 0; k < x.indices.size(); ++k) dense[x.indices[k]] = x.values[k];
            double ref = model.binaries[c].bias;
            for (size_t f = 0; f < 4; ++f) ref += model.binaries[c].weights[f] * dense[f];
            CHECK(std::fabs(s1[c] - ref) <= 1e-12);
        }
    }

    SparseVector oob = sv({{99, 1.0}});
    CHECK_THROWS_AS(decision_scores(model, oob), DataError);
}

TEST_CASE("predict argmax and tie-breaking") {
    // hand-built model: two classes over two features, no bias feature
    MulticlassLinearModel model;
    model.classes = {"a", "b"};
    model.n_features = 2;
    model.config.bias_scale = 0.0;
    BinaryModel ba, bb;
    ba.weights = {0.2, 0.0};
    bb.weights = {0.0, 0.9};
    model.binaries = {ba, bb};
    CHECK(predict(model, sv({{1, 1.0}})) == "b");   // scores {0, 0.9}
    CHECK(predict(model, sv({{0, 1.0}})) == "a");   // scores {0.2, 0}
    model.binaries[1].weights = {0.2, 0.0};
    CHECK(predict(model, sv({{0, 1.0}})) == "a");   // exact tie -> smaller class

    // argmax is invariant under positive rescaling of all scores
    MulticlassLinearModel scaled = model;
    for (auto& bin : scaled.binaries) {
        for (double& w : bin.weights) w *= 7.5;
        bin.bias *= 7.5;
    }
    std::mt19937_64 rng(55);
    for (int i = 0; i < 50; ++i) {
        auto x = sv({{0, (rng() % 100) / 40.0}, {1, (rng() % 100) / 40.0}});
        CHECK(predict(model, x) == predict(scaled, x));
    }
}
