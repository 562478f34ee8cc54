#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bcdi/array.hpp"
#include "bcdi/recovery.hpp"

namespace bcdi {

inline constexpr double kDefaultSrtfFloor = 1e-6;

/// Per-pixel sqrt(I_recovered / I_ground_truth) on pixels where the ground
/// truth exceeds floor * max(I_ground_truth). Mean and population standard
/// deviation are taken over those valid pixels only.
struct SrtfReport {
    RealImage map;
    Image<std::uint8_t> valid;
    double mean = 0.0;
    double std = 0.0;
    double floor = kDefaultSrtfFloor;
    std::size_t n_valid = 0;
};

SrtfReport srtf_map(const RealImage& recovered, const RealImage& ground_truth, double floor = kDefaultSrtfFloor);

enum class SliceKind { OnBragg, OffBragg };

std::string to_string(SliceKind kind);

struct SrtfSweepRow {
    std::size_t pbf = 0;
    std::size_t positions = 0;
    SliceKind slice_kind = SliceKind::OnBragg;
    double mu = 0.0;
    double sigma = 0.0;
    std::size_t n_valid = 0;
    double floor = kDefaultSrtfFloor;
};

struct SrtfSweepRequest {
    std::vector<std::size_t> pbfs{4, 5, 6};
    std::vector<std::size_t> positions{1, 13};
    std::size_t roi_fine = 120;
    double floor = kDefaultSrtfFloor;
    std::size_t threads = 1;
};

/// Central slice (on-Bragg) and the last slice (off-Bragg, the terminal frame
/// of the rocking curve). Index along the last axis. Slice 0 of an even-length
/// axis is the Nyquist plane, which vanishes exactly for objects with an even
/// number of symmetric planes, so it is not used as the terminal frame.
std::size_t slice_index(SliceKind kind, std::size_t n_slices);

/// Bins and recovers the on- and off-Bragg slices of `ground_truth` for every
/// (pbf, positions) pair using diagonal offsets and tabulates SRTF statistics.
/// Rows are pbf-major, then positions, then on-Bragg before off-Bragg.
std::vector<SrtfSweepRow> srtf_sweep(const RealVolume& ground_truth, const SrtfSweepRequest& request,
                                     const RecoveryConfig& config);

} // namespace bcdi
