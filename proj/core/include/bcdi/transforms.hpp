#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "bcdi/array.hpp"

namespace bcdi {

// Fourier convention used throughout the library:
//   forward transforms are unnormalized, inverse transforms carry 1/n,
//   and both real and reciprocal space arrays are stored centered, i.e. the
//   origin sits at index floor(n/2) on every axis.

ComplexVolume fft3_centered(const ComplexVolume& volume);
ComplexVolume ifft3_centered(const ComplexVolume& volume);
ComplexImage fft2_centered(const ComplexImage& image);
ComplexImage ifft2_centered(const ComplexImage& image);

enum class DctNormalization {
    /// Plain double sum with C(p;q) = cos[(p + 1/2) q pi / N] and no scaling.
    Raw,
    /// Rows of the 1D basis matrix scaled to unit norm, making the 2D transform orthogonal.
    Orthonormal,
};

struct Spectrum2D {
    RealImage coeffs;
    std::optional<DctNormalization> normalization;
};

Spectrum2D dct2(const RealImage& image, DctNormalization normalization);
RealImage idct2(const Spectrum2D& spectrum);

// Allocation-free orthonormal pair on a flattened N x N buffer; used by the
// sparse solver where the transform sits inside the iteration.
void dct2_orthonormal_inplace(std::span<double> data, std::size_t n);
void idct2_orthonormal_inplace(std::span<double> data, std::size_t n);

/// Sum of the volume along `axis`.
ComplexImage project(const ComplexVolume& volume, std::size_t axis);

/// Projection along `axis` weighted by exp(-2 pi i k z / n), where k is the
/// centered frequency of `slice_index` and z the centered coordinate. For the
/// central slice (k = 0) this is the plain projection.
ComplexImage project_modulated(const ComplexVolume& volume, std::size_t axis, std::size_t slice_index);

struct ProjectionSliceResidual {
    double max_abs = 0.0;
    /// max_abs divided by the largest line sum of |volume| along the axis (0 for a zero volume).
    double relative = 0.0;
};

/// Compares the inverse 2D transform of slice `slice_index` of the 3D
/// transform against the matching (modulated) projection of the volume.
ProjectionSliceResidual verify_projection_slice(const ComplexVolume& volume, std::size_t axis,
                                                std::size_t slice_index);

} // namespace bcdi
