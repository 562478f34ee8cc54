#include "bcdi/transforms.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "bcdi/fft.hpp"

namespace bcdi {
namespace {

void check_volume(const ComplexVolume& volume) {
    for (std::size_t axis = 0; axis < 3; ++axis) {
        if (volume.dim(axis) == 0) {
            throw InvalidInput("volume axis " + std::to_string(axis) + " has length 0");
        }
    }
}

ComplexVolume transform3(const ComplexVolume& volume, fft::Direction direction) {
    check_volume(volume);
    ComplexVolume work = fft::ifftshift(volume);
    fft::c2c(work.values(), volume.shape().dims, direction);
    if (direction == fft::Direction::Inverse) {
        const double scale = 1.0 / static_cast<double>(work.size());
        for (auto& v : work.values()) {
            v *= scale;
        }
    }
    return fft::fftshift(work);
}

ComplexImage transform2(const ComplexImage& image, fft::Direction direction) {
    require(image.rows() > 0 && image.cols() > 0, "image axes must be non-empty");
    ComplexImage work = fft::ifftshift(image);
    const std::array<std::size_t, 2> dims{image.rows(), image.cols()};
    fft::c2c(work.values(), dims, direction);
    if (direction == fft::Direction::Inverse) {
        const double scale = 1.0 / static_cast<double>(work.size());
        for (auto& v : work.values()) {
            v *= scale;
        }
    }
    return fft::fftshift(work);
}

// Orthonormal scale for coefficient q of an N-point DCT-II relative to the raw sum.
double ortho_scale(std::size_t q, std::size_t n) {
    return q == 0 ? std::sqrt(1.0 / static_cast<double>(n)) : std::sqrt(2.0 / static_cast<double>(n));
}

} // namespace

ComplexVolume fft3_centered(const ComplexVolume& volume) { return transform3(volume, fft::Direction::Forward); }
ComplexVolume ifft3_centered(const ComplexVolume& volume) { return transform3(volume, fft::Direction::Inverse); }
ComplexImage fft2_centered(const ComplexImage& image) { return transform2(image, fft::Direction::Forward); }
ComplexImage ifft2_centered(const ComplexImage& image) { return transform2(image, fft::Direction::Inverse); }

void dct2_orthonormal_inplace(std::span<double> data, std::size_t n) {
    // FFTW's REDFT10 is twice the raw sum per axis.
    fft::dct2_unnormalized(data, n);
    std::vector<double> scale(n);
    for (std::size_t q = 0; q < n; ++q) {
        scale[q] = 0.5 * ortho_scale(q, n);
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            data[r * n + c] *= scale[r] * scale[c];
        }
    }
}

void idct2_orthonormal_inplace(std::span<double> data, std::size_t n) {
    // Undo the orthonormal scaling to get raw coefficients, then
    // REDFT01(raw) = N^2 * image.
    std::vector<double> scale(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t q = 0; q < n; ++q) {
        scale[q] = inv_n / ortho_scale(q, n);
    }
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            data[r * n + c] *= scale[r] * scale[c];
        }
    }
    fft::dct3_unnormalized(data, n);
}

Spectrum2D dct2(const RealImage& image, DctNormalization normalization) {
    if (image.rows() != image.cols()) {
        throw InvalidInput("dct2 requires a square image");
    }
    require(image.rows() >= 1, "dct2 requires N >= 1");
    const std::size_t n = image.rows();
    Spectrum2D out{image, normalization};
    if (normalization == DctNormalization::Orthonormal) {
        dct2_orthonormal_inplace(out.coeffs.values(), n);
    } else {
        fft::dct2_unnormalized(out.coeffs.values(), n);
        for (auto& v : out.coeffs.values()) {
            v *= 0.25;
        }
    }
    return out;
}

RealImage idct2(const Spectrum2D& spectrum) {
    if (!spectrum.normalization) {
        throw InvalidInput("spectrum carries no normalization tag");
    }
    const RealImage& coeffs = spectrum.coeffs;
    if (coeffs.rows() != coeffs.cols() || coeffs.rows() == 0) {
        throw InvalidInput("idct2 requires a non-empty square spectrum");
    }
    const std::size_t n = coeffs.rows();
    RealImage out = coeffs;
    if (*spectrum.normalization == DctNormalization::Orthonormal) {
        idct2_orthonormal_inplace(out.values(), n);
    } else {
        fft::dct3_unnormalized(out.values(), n);
        const double scale = 1.0 / static_cast<double>(n * n);
        for (auto& v : out.values()) {
            v *= scale;
        }
    }
    return out;
}

ComplexImage project(const ComplexVolume& volume, std::size_t axis) {
    require(axis < 3, "projection axis must be 0, 1 or 2");
    const std::size_t a = axis == 0 ? 1 : 0;
    const std::size_t b = axis == 2 ? 1 : 2;
    ComplexImage out(volume.dim(a), volume.dim(b));
    std::array<std::size_t, 3> idx{};
    for (idx[0] = 0; idx[0] < volume.dim(0); ++idx[0]) {
        for (idx[1] = 0; idx[1] < volume.dim(1); ++idx[1]) {
            for (idx[2] = 0; idx[2] < volume.dim(2); ++idx[2]) {
                out(idx[a], idx[b]) += volume(idx[0], idx[1], idx[2]);
            }
        }
    }
    return out;
}

ComplexImage project_modulated(const ComplexVolume& volume, std::size_t axis, std::size_t slice_index) {
    require(axis < 3, "projection axis must be 0, 1 or 2");
    const std::size_t n = volume.dim(axis);
    require(slice_index < n, "slice index out of range");
    const auto center = static_cast<long long>(n / 2);
    const long long freq = static_cast<long long>(slice_index) - center;
    const auto nn = static_cast<long long>(n);

    // Phase factors reduced modulo n so large products stay exact.
    std::vector<complex> weight(n);
    for (std::size_t z = 0; z < n; ++z) {
        const long long coord = static_cast<long long>(z) - center;
        const long long turns = ((freq * coord) % nn + nn) % nn;
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(turns) / static_cast<double>(n);
        weight[z] = {std::cos(angle), std::sin(angle)};
    }

    const std::size_t a = axis == 0 ? 1 : 0;
    const std::size_t b = axis == 2 ? 1 : 2;
    ComplexImage out(volume.dim(a), volume.dim(b));
    std::array<std::size_t, 3> idx{};
    for (idx[0] = 0; idx[0] < volume.dim(0); ++idx[0]) {
        for (idx[1] = 0; idx[1] < volume.dim(1); ++idx[1]) {
            for (idx[2] = 0; idx[2] < volume.dim(2); ++idx[2]) {
                out(idx[a], idx[b]) += weight[idx[axis]] * volume(idx[0], idx[1], idx[2]);
            }
        }
    }
    return out;
}

ProjectionSliceResidual verify_projection_slice(const ComplexVolume& volume, std::size_t axis,
                                                std::size_t slice_index) {
    require(axis < 3, "slicing axis must be 0, 1 or 2");
    if (slice_index >= volume.dim(axis)) {
        throw InvalidInput("slice index out of range");
    }
    const ComplexVolume spectrum = fft3_centered(volume);
    const ComplexImage from_slice = ifft2_centered(extract_slice(spectrum, axis, slice_index));
    const ComplexImage from_projection = project_modulated(volume, axis, slice_index);

    // Normalize by the largest line sum of |volume|. It bounds every
    // modulated projection, so slices whose transform vanishes (zeros of a
    // sinc, say) do not turn rounding noise into a large relative error.
    ComplexVolume magnitude(volume.shape());
    for (std::size_t i = 0; i < volume.size(); ++i) {
        magnitude[i] = std::abs(volume[i]);
    }
    const ComplexImage line_sums = project(magnitude, axis);

    ProjectionSliceResidual result;
    double scale = 0.0;
    for (std::size_t i = 0; i < from_slice.size(); ++i) {
        result.max_abs = std::max(result.max_abs, std::abs(from_slice[i] - from_projection[i]));
        scale = std::max(scale, line_sums[i].real());
    }
    result.relative = scale > 0.0 ? result.max_abs / scale : result.max_abs;
    return result;
}

} // namespace bcdi
