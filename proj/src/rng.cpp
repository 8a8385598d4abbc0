#include "cylpress/rng.hpp"

#include <algorithm>
#include <cmath>

namespace cylpress {

double Rng::next_gaussian() {
    // u1 shifted away from zero so the log is finite.
    double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
    std::vector<std::size_t> idx = iota_indices(n);
    // Partial Fisher-Yates: the first k slots end up holding the draw.
    for (std::size_t i = 0; i < k && i + 1 < n; ++i) {
        std::size_t j = i + static_cast<std::size_t>(next_below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

}  // namespace cylpress
