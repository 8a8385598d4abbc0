#pragma once

#include <cstdint>
#include <vector>

#include "cylpress/cart.hpp"
#include "cylpress/dataset.hpp"

namespace cylpress {

// Bagged trees with per-node random feature selection.
struct RandomForestParams {
    std::size_t n_trees = 150;
    std::size_t n_features = 1;  // features drawn per node, 1..3
    TreeParams tree;
    bool bootstrap = true;
    std::uint64_t seed = 0;
};

void validate(const RandomForestParams& p);

struct RandomForestModel {
    RandomForestParams params;
    std::vector<RegressionTree> trees;
};

// Stochastic gradient boosting under squared-error loss. Each stage fits a
// depth-limited tree to the current residuals on a fresh subsample drawn
// without replacement.
struct GbrtParams {
    double learning_rate = 0.01;    // Lr, in (0, 1]
    std::size_t max_depth = 8;      // Td, >= 1
    std::size_t n_trees = 5000;     // Nt, >= 0
    double subsample = 0.3;         // Fs, in (0, 1]
    std::size_t min_samples_leaf = 1;
    std::uint64_t seed = 0;
};

void validate(const GbrtParams& p);

struct GbrtModel {
    GbrtParams params;
    double base_prediction = 0.0;  // F0: mean training target
    double learning_rate = 0.01;
    std::vector<RegressionTree> trees;
};

// Uniform draw of ds.size() samples with replacement; deterministic in seed.
Dataset bootstrap_sample(const Dataset& ds, std::uint64_t seed);

// Tree i trains on bootstrap_sample(ds, derive(seed, rf_bootstrap, i)) when
// bootstrapping is on (otherwise on ds), with feature_subset_size =
// n_features and tree seed derive(seed, rf_tree, i). Trees are independent,
// so n_threads only changes wall time, never the model.
RandomForestModel fit_random_forest(const Dataset& ds, const RandomForestParams& params,
                                    std::size_t n_threads = 1);

// Arithmetic mean of the member trees' predictions.
double predict_forest(const RandomForestModel& model, const FeatureVector& x);

// F0 = mean target; stage m draws floor(Fs * n) samples without replacement
// (seeded per stage), fits a tree to the residuals y - F_{m-1}(x) on the
// subsample, then F_m = F_{m-1} + Lr * tree_m. Stages are sequential.
GbrtModel fit_gbrt(const Dataset& ds, const GbrtParams& params);

// F0 + Lr * sum of member-tree predictions.
double predict_gbrt(const GbrtModel& model, const FeatureVector& x);

}  // namespace cylpress
