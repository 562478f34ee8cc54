#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace bcdi::io {

/// Writes `bytes` to a sibling temporary file and renames it over `path`, so
/// readers never observe a partially written file. Creates parent directories.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// fnv1a64 as 16 lowercase hex digits.
std::string hash_hex(std::string_view bytes);

} // namespace bcdi::io
