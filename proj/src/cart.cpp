#include "cylpress/cart.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "cylpress/rng.hpp"

namespace cylpress {

void validate(const TreeParams& p) {
    if (p.max_leaf_nodes && *p.max_leaf_nodes < 2) {
        throw std::invalid_argument("max_leaf_nodes must be >= 2 when set");
    }
    if (p.min_samples_leaf < 1) throw std::invalid_argument("min_samples_leaf must be >= 1");
}

double mse_impurity(const std::vector<double>& targets) {
    if (targets.empty()) throw std::invalid_argument("mse_impurity: empty target list");
    double mean = 0.0;
    for (double t : targets) mean += t;
    mean /= static_cast<double>(targets.size());
    double sse = 0.0;
    for (double t : targets) sse += (t - mean) * (t - mean);
    return sse / static_cast<double>(targets.size());
}

double gini_index(const std::vector<double>& fractions) {
    double sum = 0.0;
    for (double f : fractions) {
        if (f < 0.0) throw std::invalid_argument("gini_index: negative class fraction");
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("gini_index: class fractions must sum to 1");
    }
    double g = 1.0;
    for (double f : fractions) g -= f * f;
    return g;
}

namespace {

struct NodeStats {
    double mean = 0.0;
    double sse = 0.0;  // sum of squared deviations from the mean
};

NodeStats node_stats(const std::vector<double>& targets, const std::vector<std::size_t>& indices) {
    NodeStats s;
    for (std::size_t i : indices) s.mean += targets[i];
    s.mean /= static_cast<double>(indices.size());
    for (std::size_t i : indices) {
        double d = targets[i] - s.mean;
        s.sse += d * d;
    }
    return s;
}

// Midpoint between consecutive distinct values a < b. When rounding pushes
// the midpoint up to b itself, fall back to a so that "x <= threshold"
// still routes exactly the sorted prefix left.
double split_threshold(double a, double b) {
    double mid = a + (b - a) * 0.5;
    return mid < b ? mid : a;
}

}  // namespace

std::optional<SplitCandidate> best_split(const std::vector<FeatureVector>& features,
                                         const std::vector<double>& targets,
                                         const std::vector<std::size_t>& sample_indices,
                                         const std::vector<std::size_t>& allowed_features,
                                         std::size_t min_samples_leaf) {
    if (allowed_features.empty()) throw std::invalid_argument("best_split: no features allowed");
    const std::size_t n = sample_indices.size();
    if (min_samples_leaf < 1 || n < 2 * min_samples_leaf) return std::nullopt;

    std::optional<SplitCandidate> best;

    std::vector<std::pair<double, std::size_t>> order(n);  // (feature value, sample index)
    std::vector<double> prefix_sum(n + 1), prefix_sq(n + 1);

    for (std::size_t f : allowed_features) {
        for (std::size_t i = 0; i < n; ++i) {
            order[i] = {features[sample_indices[i]][f], sample_indices[i]};
        }
        // Index tiebreak keeps the ordering unique, so the scan below is
        // bit-deterministic even with duplicated rows (bootstrap resamples).
        std::sort(order.begin(), order.end());

        prefix_sum[0] = prefix_sq[0] = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double t = targets[order[i].second];
            prefix_sum[i + 1] = prefix_sum[i] + t;
            prefix_sq[i + 1] = prefix_sq[i] + t * t;
        }
        const double total_sum = prefix_sum[n];
        const double total_sq = prefix_sq[n];
        const double sse_total =
            std::max(0.0, total_sq - total_sum * total_sum / static_cast<double>(n));

        for (std::size_t p = min_samples_leaf; p + min_samples_leaf <= n; ++p) {
            double lo = order[p - 1].first;
            double hi = order[p].first;
            if (!(lo < hi)) continue;  // not a boundary between distinct values

            double nl = static_cast<double>(p);
            double nr = static_cast<double>(n - p);
            double sse_left = std::max(0.0, prefix_sq[p] - prefix_sum[p] * prefix_sum[p] / nl);
            double right_sum = total_sum - prefix_sum[p];
            double sse_right =
                std::max(0.0, total_sq - prefix_sq[p] - right_sum * right_sum / nr);
            double decrease = (sse_total - sse_left - sse_right) / static_cast<double>(n);

            // Strict comparison implements the tiebreak: features are
            // scanned ascending and thresholds ascend within a feature.
            if (decrease > 0.0 && (!best || decrease > best->impurity_decrease)) {
                best = SplitCandidate{f, split_threshold(lo, hi), decrease, p, n - p};
            }
        }
    }
    return best;
}

std::size_t RegressionTree::leaf_count() const {
    std::size_t count = 0;
    for (const TreeNode& node : nodes) count += node.is_leaf ? 1 : 0;
    return count;
}

std::size_t RegressionTree::depth() const {
    if (nodes.empty()) return 0;
    std::size_t max_depth = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
        auto [idx, d] = stack.back();
        stack.pop_back();
        max_depth = std::max(max_depth, d);
        const TreeNode& node = nodes[idx];
        if (!node.is_leaf) {
            stack.push_back({node.left, d + 1});
            stack.push_back({node.right, d + 1});
        }
    }
    return max_depth;
}

namespace {

// Shared state for one fit.
struct Grower {
    const std::vector<FeatureVector>& features;
    const std::vector<double>& targets;
    const TreeParams& params;
    std::optional<std::size_t> feature_subset_size;
    std::uint64_t rng_seed;
    RegressionTree tree;

    std::size_t add_leaf(const std::vector<std::size_t>& indices) {
        NodeStats stats = node_stats(targets, indices);
        TreeNode node;
        node.is_leaf = true;
        node.value = stats.mean;
        node.n_samples = indices.size();
        node.node_mse = stats.sse / static_cast<double>(indices.size());
        tree.nodes.push_back(node);
        return tree.nodes.size() - 1;
    }

    // Features visible to the node with the given creation index. The seed
    // depends only on (tree seed, creation index), never on traversal order.
    std::vector<std::size_t> features_for_node(std::size_t creation_index) const {
        std::size_t total = FeatureVector::count;
        if (!feature_subset_size || *feature_subset_size >= total) {
            return iota_indices(total);
        }
        Rng rng(derive_seed(rng_seed, SeedRole::tree_node_features, creation_index));
        return rng.sample_without_replacement(total, *feature_subset_size);
    }

    std::optional<SplitCandidate> search(std::size_t node_index,
                                         const std::vector<std::size_t>& indices,
                                         std::size_t depth) const {
        if (depth >= params.max_depth) return std::nullopt;
        if (indices.size() < 2 * params.min_samples_leaf) return std::nullopt;
        return best_split(features, targets, indices, features_for_node(node_index),
                          params.min_samples_leaf);
    }

    // Stable partition on the routing predicate, preserving index order.
    void apply_split(std::size_t node_index, const SplitCandidate& split,
                     const std::vector<std::size_t>& indices,
                     std::vector<std::size_t>& left_indices,
                     std::vector<std::size_t>& right_indices) {
        left_indices.clear();
        right_indices.clear();
        for (std::size_t i : indices) {
            if (features[i][split.feature_index] <= split.threshold) {
                left_indices.push_back(i);
            } else {
                right_indices.push_back(i);
            }
        }
        std::size_t left = add_leaf(left_indices);
        std::size_t right = add_leaf(right_indices);
        TreeNode& node = tree.nodes[node_index];
        node.is_leaf = false;
        node.feature_index = split.feature_index;
        node.threshold = split.threshold;
        node.left = left;
        node.right = right;
    }

    void grow_depth_first(std::size_t node_index, std::vector<std::size_t>&& indices,
                          std::size_t depth) {
        auto split = search(node_index, indices, depth);
        if (!split) return;
        std::vector<std::size_t> left_indices, right_indices;
        apply_split(node_index, *split, indices, left_indices, right_indices);
        indices.clear();
        indices.shrink_to_fit();
        std::size_t left = tree.nodes[node_index].left;
        std::size_t right = tree.nodes[node_index].right;
        grow_depth_first(left, std::move(left_indices), depth + 1);
        grow_depth_first(right, std::move(right_indices), depth + 1);
    }

    void grow_best_first(std::vector<std::size_t>&& root_indices) {
        struct Frontier {
            std::size_t node_index = 0;
            std::size_t depth = 0;
            SplitCandidate split;
            std::vector<std::size_t> indices;
        };
        std::vector<Frontier> frontier;

        struct HeapEntry {
            double decrease;
            std::size_t creation_index;
            std::size_t slot;
        };
        auto worse = [](const HeapEntry& a, const HeapEntry& b) {
            if (a.decrease != b.decrease) return a.decrease < b.decrease;
            return a.creation_index > b.creation_index;  // earlier node wins ties
        };
        std::priority_queue<HeapEntry, std::vector<HeapEntry>, decltype(worse)> heap(worse);

        auto offer = [&](std::size_t node_index, std::vector<std::size_t>&& indices,
                         std::size_t depth) {
            auto split = search(node_index, indices, depth);
            if (!split) return;
            frontier.push_back({node_index, depth, *split, std::move(indices)});
            heap.push({split->impurity_decrease, node_index, frontier.size() - 1});
        };

        offer(tree.root, std::move(root_indices), 0);
        std::size_t leaves = 1;
        const std::size_t budget = *params.max_leaf_nodes;
        std::vector<std::size_t> left_indices, right_indices;
        while (!heap.empty() && leaves < budget) {
            HeapEntry top = heap.top();
            heap.pop();
            Frontier node = std::move(frontier[top.slot]);
            apply_split(node.node_index, node.split, node.indices, left_indices, right_indices);
            ++leaves;
            std::size_t left = tree.nodes[node.node_index].left;
            std::size_t right = tree.nodes[node.node_index].right;
            offer(left, std::move(left_indices), node.depth + 1);
            offer(right, std::move(right_indices), node.depth + 1);
            left_indices = {};
            right_indices = {};
        }
    }
};

}  // namespace

RegressionTree fit_tree(const std::vector<FeatureVector>& features,
                        const std::vector<double>& targets,
                        const std::vector<std::size_t>& sample_indices, const TreeParams& params,
                        std::optional<std::size_t> feature_subset_size, std::uint64_t rng_seed) {
    validate(params);
    if (sample_indices.empty()) throw std::invalid_argument("fit_tree: empty sample set");
    if (feature_subset_size &&
        (*feature_subset_size < 1 || *feature_subset_size > FeatureVector::count)) {
        throw std::invalid_argument("fit_tree: feature_subset_size out of range");
    }

    Grower grower{features, targets, params, feature_subset_size, rng_seed, {}};
    std::vector<std::size_t> indices = sample_indices;
    grower.tree.root = grower.add_leaf(indices);
    if (params.max_leaf_nodes) {
        grower.grow_best_first(std::move(indices));
    } else {
        grower.grow_depth_first(grower.tree.root, std::move(indices), 0);
    }
    return grower.tree;
}

RegressionTree fit_tree(const Dataset& ds, const TreeParams& params,
                        std::optional<std::size_t> feature_subset_size, std::uint64_t rng_seed) {
    if (ds.empty()) throw std::invalid_argument("fit_tree: empty dataset");
    std::vector<FeatureVector> features;
    std::vector<double> targets;
    features.reserve(ds.size());
    targets.reserve(ds.size());
    for (const Sample& s : ds.samples()) {
        features.push_back(featurize(s));
        targets.push_back(s.target);
    }
    return fit_tree(features, targets, iota_indices(ds.size()), params, feature_subset_size,
                    rng_seed);
}

double predict_tree(const RegressionTree& tree, const FeatureVector& x) {
    std::size_t idx = tree.root;
    while (!tree.nodes[idx].is_leaf) {
        const TreeNode& node = tree.nodes[idx];
        idx = x[node.feature_index] <= node.threshold ? node.left : node.right;
    }
    return tree.nodes[idx].value;
}

}  // namespace cylpress
