#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "bcdi/config.hpp"

namespace bcdi::cli {

struct Context {
    ExperimentConfig config;
    std::filesystem::path output;
    std::size_t threads = 1;
    bool verbose = false;
    /// The command line as typed, recorded in manifests.
    std::string command;
};

void simulate(const Context& ctx);
void bin(const Context& ctx, const std::filesystem::path& intensity_file);
void recover(const Context& ctx, const std::filesystem::path& bin_dir);
void evaluate(const Context& ctx, const std::filesystem::path& truth_file,
              const std::optional<std::filesystem::path>& recovered_file);
void tables(const Context& ctx);
void retrieve(const Context& ctx, const std::filesystem::path& intensity_file,
              const std::optional<std::filesystem::path>& truth_file);
void pipeline(const Context& ctx);

} // namespace bcdi::cli
