#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace cylpress {

// Deterministic random-number utilities shared by every seeded operation.
//
// All randomness in the library flows through this generator so that fitted
// models and generated datasets are bit-reproducible across runs, platforms,
// and worker counts. The algorithms below are frozen: changing any of them
// invalidates previously trained model files' reproducibility guarantees.
//
//  * stream:      splitmix64 (Steele, Lea & Flood 2014)
//  * child seeds: derive_seed(master, role, index) =
//                 splitmix64(splitmix64(master ^ role) + index)
//  * bounded int: 128-bit multiply-shift of the next 64-bit word
//  * doubles:     53 high bits of the next word, scaled to [0, 1)
//  * gaussian:    Box-Muller, two uniforms per variate, cosine branch only

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Role tags keep independently consumed seed streams from colliding.
enum class SeedRole : std::uint64_t {
    rf_bootstrap = 0x01,
    rf_tree = 0x02,
    gbrt_stage = 0x03,
    tree_node_features = 0x04,
    ttv_split = 0x05,
    cv_folds = 0x06,
    synth_data = 0x07,
};

constexpr std::uint64_t derive_seed(std::uint64_t master, SeedRole role, std::uint64_t index = 0) {
    return splitmix64(splitmix64(master ^ static_cast<std::uint64_t>(role)) + index);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // Uniform in [0, bound). bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double next_in(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms.
    double next_gaussian();

    // In-place Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    // k distinct values from {0, ..., n-1}, returned in ascending order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::uint64_t state_;
};

// Identity permutation helper used by the shuffling call sites.
inline std::vector<std::size_t> iota_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
}

}  // namespace cylpress
