#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bcdi/array.hpp"

namespace bcdi {

/// Detector translation in whole fine pixels (row = slow axis, col = fast axis).
struct Offset {
    int row = 0;
    int col = 0;
    friend bool operator==(const Offset&, const Offset&) = default;
};

enum class OffsetScheme { Diagonal, Custom };

struct DetectorGeometry {
    std::size_t roi_fine = 120;
    std::size_t pbf = 1;
    std::vector<Offset> offsets{Offset{}};
    OffsetScheme scheme = OffsetScheme::Diagonal;

    [[nodiscard]] std::size_t coarse_side() const { return roi_fine / pbf; }
};

/// Throws InfeasibleGeometry when the ROI is not divisible by the binning
/// factor, InvalidInput for an empty offset list or a zero factor.
void validate_geometry(const DetectorGeometry& geometry);

/// Offset reduced into [0, m) x [0, m); binning grids repeat with period m.
Offset reduce_offset(Offset offset, std::size_t m);

struct OffsetDedup {
    std::vector<Offset> unique;      // reduced, first-occurrence order
    std::vector<Offset> duplicates;  // requested offsets that collapsed onto an earlier one
};

OffsetDedup deduplicate_offsets(std::span<const Offset> offsets, std::size_t m);

/// Every distinct diagonal offset modulo m: zero first, then (d, d) for
/// d = 1..m-1, then (d, -d) for d = 1..m-1 skipping any already listed.
/// For odd m that is 2m - 1 offsets; for even m the two diagonals cross at
/// (m/2, m/2), leaving 2m - 2.
std::vector<Offset> enumerate_diagonal_offsets(std::size_t m);

/// The first `n_positions` entries of the raw diagonal walk (zero, +1..+(m-1),
/// -1..-(m-1)), without deduplication. Saturates at 2m - 1 entries.
std::vector<Offset> diagonal_positions(std::size_t m, std::size_t n_positions);

/// One coarse detector frame: the retained (fully inside ROI) coarse pixels.
struct CoarseFrame {
    Offset offset;          // reduced
    std::size_t first_row = 0;  // coarse index of values(0, *)
    std::size_t first_col = 0;
    RealImage values;
};

/// Coarse pixel (r, c) sums the m x m fine block anchored at
/// (r*m - offset.row, c*m - offset.col); blocks leaving the ROI are dropped.
CoarseFrame bin_slice(const RealImage& fine, const DetectorGeometry& geometry, Offset offset);

struct MeasurementEntry {
    std::uint32_t offset_id = 0;
    std::uint32_t coarse_row = 0;
    std::uint32_t coarse_col = 0;
    std::uint32_t fine_row = 0;  // footprint anchor
    std::uint32_t fine_col = 0;
    double value = 0.0;
};

struct MeasurementSet {
    std::size_t roi_fine = 0;
    std::size_t pbf = 1;
    std::vector<Offset> offsets;
    std::vector<MeasurementEntry> entries;

    /// Flattened fine-pixel indices summed by entry `i`.
    [[nodiscard]] std::vector<std::size_t> footprint(std::size_t i) const;
    [[nodiscard]] std::vector<double> values() const;
};

/// Row-sparse binning operator A mapping a flattened ROI to every retained
/// coarse measurement across all (deduplicated) offsets, offset-major then
/// coarse row-major. Each row holds pbf^2 unit entries.
class MeasurementOperator {
public:
    explicit MeasurementOperator(const DetectorGeometry& geometry);

    [[nodiscard]] std::size_t rows() const { return anchors_.size(); }
    [[nodiscard]] std::size_t cols() const { return roi_ * roi_; }
    [[nodiscard]] std::size_t pbf() const { return pbf_; }
    [[nodiscard]] const std::vector<Offset>& offsets() const { return offsets_; }

    void apply(std::span<const double> fine, std::span<double> measurements) const;
    void apply_adjoint(std::span<const double> measurements, std::span<double> fine) const;

    /// Measurements of `fine` packaged with their footprints.
    [[nodiscard]] MeasurementSet measure(const RealImage& fine) const;

    /// Frame layout: [begin, end) row range of offset `id`.
    [[nodiscard]] std::pair<std::size_t, std::size_t> frame_rows(std::size_t id) const;

private:
    struct Anchor {
        std::uint32_t offset_id;
        std::uint32_t coarse_row;
        std::uint32_t coarse_col;
        std::uint32_t fine_row;
        std::uint32_t fine_col;
    };

    std::size_t roi_;
    std::size_t pbf_;
    std::vector<Offset> offsets_;
    std::vector<Anchor> anchors_;
    std::vector<std::size_t> frame_begin_;
};

/// Unique constraints from n diagonal positions on an N x N coarse grid:
/// N^2 from the zero offset plus (N-1)^2 per further position, capped at
/// 2m - 1 further positions for even m and 2m - 2 for odd m.
std::uint64_t count_unique_constraints(std::uint64_t n_coarse, std::uint64_t m, std::uint64_t n_positions);

/// Largest number of further positions that still add constraints in the count above.
std::uint64_t diagonal_position_cap(std::uint64_t m);

/// Number of distinct footprints across a set of offsets.
std::uint64_t unique_footprint_count(const DetectorGeometry& geometry);

/// Ratio of constraints to unknowns, [1 - 1/N + 1/(mN)]^d.
double constraint_ratio(std::uint64_t n, std::uint64_t m, unsigned d);

/// sqrt(M) / N. Throws when M < N^2.
double distance_multiplier(std::uint64_t m_constraints, std::uint64_t n_coarse);

/// [N + (m-1)(N-1)] / N.
double max_distance_multiplier(std::uint64_t n_coarse, std::uint64_t m);

struct DesignCell {
    std::uint64_t pbf = 0;
    std::uint64_t positions = 0;
    std::uint64_t constraints = 0;
    double f = 0.0;
    bool below_threshold = false;
    bool saturated = false;
};

struct DesignTableRequest {
    std::uint64_t fine_roi = 120;
    std::vector<std::uint64_t> pbfs{2, 3, 4, 5, 6};
    std::uint64_t min_positions = 1;
    std::uint64_t max_positions = 13;
    std::uint64_t sparsity = 1499;
    bool with_shading = true;
};

/// Full grid, pbf-major and positions ascending.
std::vector<DesignCell> design_tables(const DesignTableRequest& request);

} // namespace bcdi
