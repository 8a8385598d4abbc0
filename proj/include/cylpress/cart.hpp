#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cylpress/dataset.hpp"

namespace cylpress {

// Growth limits for a single regression tree.
//   max_depth        0 makes the root a leaf
//   max_leaf_nodes   unset means unlimited; set switches growth to
//                    best-first (expand the frontier node with the greatest
//                    impurity decrease) until the leaf budget is reached
//   min_samples_leaf lower bound on samples in every leaf
struct TreeParams {
    std::size_t max_depth = 8;
    std::optional<std::size_t> max_leaf_nodes;
    std::size_t min_samples_leaf = 1;
};

void validate(const TreeParams& p);

// Population variance of the targets (mean squared deviation from the
// mean); the regression impurity used throughout.
double mse_impurity(const std::vector<double>& targets);

// 1 - sum(fraction_i^2) over class fractions. Fractions must be
// nonnegative and sum to 1 within 1e-9. Exposed as the classification
// impurity counterpart; the trees in this library are regression-only.
double gini_index(const std::vector<double>& fractions);

// Winning split for one node.
struct SplitCandidate {
    std::size_t feature_index = 0;
    double threshold = 0.0;
    // Reduction of node impurity: parent variance minus the
    // sample-weighted mean of child variances.
    double impurity_decrease = 0.0;
    std::size_t left_count = 0;
    std::size_t right_count = 0;
};

// Exhaustive greedy search: for each allowed feature, every midpoint
// between consecutive distinct sorted values is scored; the candidate with
// the greatest impurity decrease wins. Ties break toward the lowest
// feature index, then the lowest threshold. Returns nullopt when no
// candidate achieves a strictly positive decrease while keeping
// min_samples_leaf on both sides.
std::optional<SplitCandidate> best_split(const std::vector<FeatureVector>& features,
                                         const std::vector<double>& targets,
                                         const std::vector<std::size_t>& sample_indices,
                                         const std::vector<std::size_t>& allowed_features,
                                         std::size_t min_samples_leaf);

// Flat-arena regression tree. Leaves carry the mean training target routed
// to them plus diagnostics; internal nodes route x[feature] <= threshold
// to the left child.
struct TreeNode {
    bool is_leaf = true;
    // leaf payload
    double value = 0.0;
    std::size_t n_samples = 0;
    double node_mse = 0.0;
    // internal payload
    std::size_t feature_index = 0;
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
};

struct RegressionTree {
    std::vector<TreeNode> nodes;
    std::size_t root = 0;

    std::size_t leaf_count() const;
    std::size_t depth() const;
};

// Grows a CART regression tree.
//
// Without max_leaf_nodes the tree grows depth-first to max_depth. With it,
// growth is best-first: the frontier is ordered by achievable impurity
// decrease (ties by node creation order) and expansion stops at the leaf
// budget; max_depth still applies.
//
// feature_subset_size, when set, draws that many distinct features at each
// node before split search, seeded per node from (rng_seed, node creation
// index) so the result is independent of traversal scheduling.
RegressionTree fit_tree(const Dataset& ds, const TreeParams& params,
                        std::optional<std::size_t> feature_subset_size, std::uint64_t rng_seed);

// Same fit on pre-featurized columns (used by the ensemble learners to
// avoid re-deriving features per tree).
RegressionTree fit_tree(const std::vector<FeatureVector>& features,
                        const std::vector<double>& targets,
                        const std::vector<std::size_t>& sample_indices, const TreeParams& params,
                        std::optional<std::size_t> feature_subset_size, std::uint64_t rng_seed);

double predict_tree(const RegressionTree& tree, const FeatureVector& x);

}  // namespace cylpress
