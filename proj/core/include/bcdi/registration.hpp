#pragma once

#include <array>

#include "bcdi/array.hpp"

namespace bcdi {

/// Twin image of a centered volume: conj(v(-r)) with r measured from the
/// floor(n/2) center, wrapping periodically.
ComplexVolume conjugate_flip(const ComplexVolume& volume);

/// Periodic translation: out(r) = in(r - shift).
ComplexVolume translate(const ComplexVolume& volume, const std::array<long long, 3>& shift);

struct Comparison {
    /// Dice coefficient of the two thresholded supports.
    double support_overlap = 0.0;
    /// Wrapped phase difference RMS over the support intersection, radians.
    double phase_rmse = 0.0;
    bool conjugate_flipped = false;
    std::array<long long, 3> shift{};
    double phase_offset = 0.0;
};

inline constexpr double kDefaultSupportThreshold = 0.5;

/// Aligns `reconstruction` to `truth` over the twin, integer translation and
/// global phase degeneracies, then compares supports taken at
/// `support_threshold` of each volume's maximum amplitude.
Comparison register_and_compare(const ComplexVolume& reconstruction, const ComplexVolume& truth,
                                double support_threshold = kDefaultSupportThreshold);

} // namespace bcdi
