#pragma once

#include <cstddef>
#include <span>

#include "bcdi/array.hpp"

// Thin layer over FFTW. Plans are created once per shape under a lock and
// then executed on caller-owned buffers, so every function here is safe to
// call from several threads at once.
namespace bcdi::fft {

enum class Direction { Forward, Inverse };

/// In-place unnormalized complex DFT over a row-major array of rank 1..3.
void c2c(std::span<complex> data, std::span<const std::size_t> dims, Direction direction);

/// In-place unnormalized type-II DCT (FFTW REDFT10) of a square image.
void dct2_unnormalized(std::span<double> data, std::size_t n);

/// In-place unnormalized type-III DCT (FFTW REDFT01) of a square image.
void dct3_unnormalized(std::span<double> data, std::size_t n);

/// Circular shift moving index 0 to floor(n/2) along every axis.
template <typename T>
Volume<T> fftshift(const Volume<T>& in);
template <typename T>
Volume<T> ifftshift(const Volume<T>& in);
template <typename T>
Image<T> fftshift(const Image<T>& in);
template <typename T>
Image<T> ifftshift(const Image<T>& in);

namespace detail {

template <typename T>
Volume<T> roll(const Volume<T>& in, const std::array<std::size_t, 3>& shift) {
    Volume<T> out(in.shape());
    const auto& d = in.shape().dims;
    for (std::size_t i = 0; i < d[0]; ++i) {
        const std::size_t oi = (i + shift[0]) % d[0];
        for (std::size_t j = 0; j < d[1]; ++j) {
            const std::size_t oj = (j + shift[1]) % d[1];
            for (std::size_t k = 0; k < d[2]; ++k) {
                out(oi, oj, (k + shift[2]) % d[2]) = in(i, j, k);
            }
        }
    }
    return out;
}

template <typename T>
Image<T> roll(const Image<T>& in, std::size_t shift_rows, std::size_t shift_cols) {
    Image<T> out(in.shape());
    for (std::size_t r = 0; r < in.rows(); ++r) {
        const std::size_t orow = (r + shift_rows) % in.rows();
        for (std::size_t c = 0; c < in.cols(); ++c) {
            out(orow, (c + shift_cols) % in.cols()) = in(r, c);
        }
    }
    return out;
}

} // namespace detail

template <typename T>
Volume<T> fftshift(const Volume<T>& in) {
    const auto& d = in.shape().dims;
    return detail::roll(in, {d[0] / 2, d[1] / 2, d[2] / 2});
}

template <typename T>
Volume<T> ifftshift(const Volume<T>& in) {
    const auto& d = in.shape().dims;
    return detail::roll(in, {d[0] - d[0] / 2, d[1] - d[1] / 2, d[2] - d[2] / 2});
}

template <typename T>
Image<T> fftshift(const Image<T>& in) {
    return detail::roll(in, in.rows() / 2, in.cols() / 2);
}

template <typename T>
Image<T> ifftshift(const Image<T>& in) {
    return detail::roll(in, in.rows() - in.rows() / 2, in.cols() - in.cols() / 2);
}

} // namespace bcdi::fft
