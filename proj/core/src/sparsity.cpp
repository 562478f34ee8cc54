#include "bcdi/sparsity.hpp"

#include <cmath>

#include "bcdi/transforms.hpp"

namespace bcdi {

std::uint64_t feasibility_threshold(std::uint64_t k, std::uint64_t n) {
    require(k >= 1, "sparsity K must be at least 1");
    if (k >= n * n) {
        throw InvalidInput("sparsity K must be smaller than N^2");
    }
    const double kd = static_cast<double>(k);
    return static_cast<std::uint64_t>(std::ceil(kd * std::log10(static_cast<double>(n * n) / kd)));
}

SparsityEstimate estimate_sparsity(const RealImage& slice, double rel_threshold) {
    require(rel_threshold > 0.0 && rel_threshold < 1.0, "relative threshold must lie in (0, 1)");
    const Spectrum2D spectrum = dct2(slice, DctNormalization::Orthonormal);
    double peak = 0.0;
    for (double c : spectrum.coeffs.values()) {
        peak = std::max(peak, std::abs(c));
    }
    if (peak == 0.0) {
        return {0, true};
    }
    const double cut = rel_threshold * peak;
    SparsityEstimate out;
    for (double c : spectrum.coeffs.values()) {
        if (std::abs(c) >= cut) {
            ++out.k;
        }
    }
    return out;
}

} // namespace bcdi
