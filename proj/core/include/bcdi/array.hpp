#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bcdi/error.hpp"

namespace bcdi {

using complex = std::complex<double>;

/// Extents of a 3D array. Storage is row-major: the last axis varies fastest.
struct Shape3 {
    std::array<std::size_t, 3> dims{};

    [[nodiscard]] std::size_t operator[](std::size_t axis) const { return dims[axis]; }
    [[nodiscard]] std::size_t size() const { return dims[0] * dims[1] * dims[2]; }
    friend bool operator==(const Shape3&, const Shape3&) = default;
};

struct Shape2 {
    std::size_t rows = 0;
    std::size_t cols = 0;

    [[nodiscard]] std::size_t size() const { return rows * cols; }
    friend bool operator==(const Shape2&, const Shape2&) = default;
};

template <typename T>
class Volume {
public:
    using value_type = T;

    Volume() = default;
    explicit Volume(Shape3 shape, T fill = T{}) : shape_(shape), data_(shape.size(), fill) {}
    Volume(std::size_t d0, std::size_t d1, std::size_t d2, T fill = T{})
        : Volume(Shape3{{d0, d1, d2}}, fill) {}

    [[nodiscard]] const Shape3& shape() const { return shape_; }
    [[nodiscard]] std::size_t dim(std::size_t axis) const { return shape_.dims[axis]; }
    [[nodiscard]] std::size_t size() const { return data_.size(); }
    [[nodiscard]] bool empty() const { return data_.empty(); }

    [[nodiscard]] std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
        return (i * shape_.dims[1] + j) * shape_.dims[2] + k;
    }
    T& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[index(i, j, k)]; }
    const T& operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[index(i, j, k)]; }
    T& operator[](std::size_t flat) { return data_[flat]; }
    const T& operator[](std::size_t flat) const { return data_[flat]; }

    [[nodiscard]] std::span<T> values() { return data_; }
    [[nodiscard]] std::span<const T> values() const { return data_; }
    [[nodiscard]] T* data() { return data_.data(); }
    [[nodiscard]] const T* data() const { return data_.data(); }

    friend bool operator==(const Volume&, const Volume&) = default;

private:
    Shape3 shape_{};
    std::vector<T> data_;
};

template <typename T>
class Image {
public:
    using value_type = T;

    Image() = default;
    Image(std::size_t rows, std::size_t cols, T fill = T{}) : shape_{rows, cols}, data_(rows * cols, fill) {}
    explicit Image(Shape2 shape, T fill = T{}) : Image(shape.rows, shape.cols, fill) {}
    Image(std::size_t rows, std::size_t cols, std::vector<T> values) : shape_{rows, cols}, data_(std::move(values)) {
        require(data_.size() == rows * cols, "image payload does not match its shape");
    }

    [[nodiscard]] const Shape2& shape() const { return shape_; }
    [[nodiscard]] std::size_t rows() const { return shape_.rows; }
    [[nodiscard]] std::size_t cols() const { return shape_.cols; }
    [[nodiscard]] std::size_t size() const { return data_.size(); }
    [[nodiscard]] bool empty() const { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * shape_.cols + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * shape_.cols + c]; }
    T& operator[](std::size_t flat) { return data_[flat]; }
    const T& operator[](std::size_t flat) const { return data_[flat]; }

    [[nodiscard]] std::span<T> values() { return data_; }
    [[nodiscard]] std::span<const T> values() const { return data_; }
    [[nodiscard]] T* data() { return data_.data(); }
    [[nodiscard]] const T* data() const { return data_.data(); }

    friend bool operator==(const Image&, const Image&) = default;

private:
    Shape2 shape_{};
    std::vector<T> data_;
};

using ComplexVolume = Volume<complex>;
using RealVolume = Volume<double>;
using ComplexImage = Image<complex>;
using RealImage = Image<double>;

/// Copy of the 2D plane at `index` perpendicular to `axis`. The remaining two
/// axes keep their relative order (rows = lower axis, cols = higher axis).
template <typename T>
Image<T> extract_slice(const Volume<T>& volume, std::size_t axis, std::size_t index) {
    require(axis < 3, "axis must be 0, 1 or 2");
    require(index < volume.dim(axis), "slice index out of range");
    const std::size_t a = axis == 0 ? 1 : 0;
    const std::size_t b = axis == 2 ? 1 : 2;
    Image<T> out(volume.dim(a), volume.dim(b));
    std::array<std::size_t, 3> idx{};
    idx[axis] = index;
    for (std::size_t r = 0; r < out.rows(); ++r) {
        idx[a] = r;
        for (std::size_t c = 0; c < out.cols(); ++c) {
            idx[b] = c;
            out(r, c) = volume(idx[0], idx[1], idx[2]);
        }
    }
    return out;
}

template <typename T>
void insert_slice(Volume<T>& volume, std::size_t axis, std::size_t index, const Image<T>& plane) {
    require(axis < 3, "axis must be 0, 1 or 2");
    require(index < volume.dim(axis), "slice index out of range");
    const std::size_t a = axis == 0 ? 1 : 0;
    const std::size_t b = axis == 2 ? 1 : 2;
    require(plane.rows() == volume.dim(a) && plane.cols() == volume.dim(b), "slice shape mismatch");
    std::array<std::size_t, 3> idx{};
    idx[axis] = index;
    for (std::size_t r = 0; r < plane.rows(); ++r) {
        idx[a] = r;
        for (std::size_t c = 0; c < plane.cols(); ++c) {
            idx[b] = c;
            volume(idx[0], idx[1], idx[2]) = plane(r, c);
        }
    }
}

/// Copy of the rows x cols window whose top-left corner is (row0, col0).
template <typename T>
Image<T> crop(const Image<T>& image, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) {
    require(row0 + rows <= image.rows() && col0 + cols <= image.cols(), "crop window exceeds image");
    Image<T> out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out(r, c) = image(row0 + r, col0 + c);
        }
    }
    return out;
}

template <typename Range>
auto max_value(const Range& values) {
    require(!std::empty(values), "max of empty array");
    return *std::max_element(std::begin(values), std::end(values));
}

} // namespace bcdi
