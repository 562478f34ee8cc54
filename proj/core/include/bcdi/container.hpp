#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "bcdi/array.hpp"

namespace bcdi {

// Binary array file: "BCD1", u32 version, u32 dtype, u32 ndim, ndim x u64
// dims, then the row-major payload. Every field is little-endian.

enum class DType : std::uint32_t { Real64 = 1, Complex128 = 2 };

inline constexpr std::uint32_t kContainerVersion = 1;

struct ArrayContainer {
    DType dtype = DType::Real64;
    std::vector<std::uint64_t> dims;
    /// Complex payloads are interleaved (re, im).
    std::vector<double> payload;

    [[nodiscard]] std::uint64_t element_count() const;
};

std::string encode(const ArrayContainer& array);

/// Validates magic, version, dtype, payload length and finiteness.
ArrayContainer decode(std::string_view bytes);

ArrayContainer to_container(const RealVolume& volume);
ArrayContainer to_container(const ComplexVolume& volume);
ArrayContainer to_container(const RealImage& image);

/// Rank-3 arrays map directly; rank-2 arrays become a single-slice volume.
RealVolume to_real_volume(const ArrayContainer& array);
ComplexVolume to_complex_volume(const ArrayContainer& array);

void write_container(const std::filesystem::path& path, const ArrayContainer& array);
ArrayContainer read_container(const std::filesystem::path& path);

} // namespace bcdi
