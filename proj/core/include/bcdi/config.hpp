#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "bcdi/crystal.hpp"
#include "bcdi/detector.hpp"
#include "bcdi/metrics.hpp"
#include "bcdi/phasing.hpp"
#include "bcdi/recovery.hpp"

namespace bcdi {

/// Detector settings as written in a config file. A diagonal scheme takes
/// the first `positions` entries of the diagonal walk; a custom scheme lists
/// its offsets explicitly.
struct GeometryConfig {
    std::size_t roi_fine = 120;
    std::size_t pbf = 6;
    OffsetScheme scheme = OffsetScheme::Diagonal;
    std::size_t positions = 13;
    std::vector<Offset> offsets;

    [[nodiscard]] DetectorGeometry resolve() const;
};

struct ExperimentConfig {
    CrystalSpec crystal;
    GeometryConfig geometry;
    RecoveryConfig recovery;
    Recipe recipe = default_recipe();
    SrtfSweepRequest evaluate;
    DesignTableRequest tables;
    std::string output_dir = "bcdi-out";
    /// Root of every random stream; copied into crystal.seed.
    std::uint64_t seed = 1;
};

/// Parses a JSON document. Missing keys keep their defaults; unknown keys,
/// wrong types and invalid values throw InvalidInput.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical JSON of every field, defaults included. Equal configs give
/// byte-identical text.
std::string to_json(const ExperimentConfig& config);

void validate_config(const ExperimentConfig& config);

} // namespace bcdi
