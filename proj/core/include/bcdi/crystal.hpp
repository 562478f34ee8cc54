#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "bcdi/array.hpp"

namespace bcdi {

/// Half-space constraint n . r <= offset, with r measured in voxels from the
/// box center. Normals need not be unit length; they are normalized on use.
struct FacetCut {
    std::array<double, 3> normal{};
    double offset = 0.0;
};

enum class PhaseModel { Zero, LinearGradient, GaussianBump };

struct PhaseField {
    PhaseModel model = PhaseModel::Zero;
    double amplitude = 1.0;    // radians
    double length_scale = 6.0; // voxels
};

/// The twelve {110} cuts that bevel every box edge, each `offset` voxels from
/// the center along its unit normal.
std::vector<FacetCut> edge_chamfers(double offset);

inline constexpr double kDefaultChamferOffset = 7.0;

/// Default object: a 22x24x22 box with beveled edges and a flat phase.
struct CrystalSpec {
    std::array<std::size_t, 3> array_dims{128, 128, 70};
    std::array<std::size_t, 3> box_dims{22, 24, 22};
    std::vector<FacetCut> facet_cuts = edge_chamfers(kDefaultChamferOffset);
    PhaseField phase;
    std::uint64_t seed = 1;
};

enum class Provenance { GroundTruth, Recovered, MeasuredBinned };

struct IntensityVolume {
    RealVolume values;
    Provenance provenance = Provenance::GroundTruth;
};

struct NyquistReport {
    bool pass = false;
    /// Per axis: array length minus twice the support span. Negative on failure.
    std::array<long long, 3> margin{};
    std::array<std::size_t, 3> support_span{};
};

/// Voxels inside the centered box and all facet cuts get magnitude 1 and the
/// configured phase; everything else is 0. Throws NyquistViolation when the
/// object would alias its own autocorrelation.
ComplexVolume build_crystal(const CrystalSpec& spec);

/// |F(crystal)|^2 with the centered, unnormalized forward transform.
IntensityVolume ground_truth_intensity(const ComplexVolume& crystal);

/// The autocorrelation of an object spanning s voxels spans 2s - 1; it fits
/// without wraparound when the array offers a zero buffer at least as wide as
/// the object, i.e. n >= 2s on every axis.
NyquistReport patterson_nyquist_check(const ComplexVolume& crystal);

/// Boolean support (|v| > 0) of a complex volume.
Volume<std::uint8_t> support_of(const ComplexVolume& volume, double relative_threshold = 0.0);

} // namespace bcdi
