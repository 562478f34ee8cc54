#include "bcdi/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcdi/sparsity.hpp"

namespace bcdi {
namespace {

// Shared by bin_slice and MeasurementOperator::apply so both produce
// bit-identical sums.
double block_sum(const double* fine, std::size_t stride, std::size_t row, std::size_t col, std::size_t m) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        const double* line = fine + (row + r) * stride + col;
        for (std::size_t c = 0; c < m; ++c) {
            sum += line[c];
        }
    }
    return sum;
}

// Coarse indices whose block [idx*m - shift, idx*m - shift + m) lies in [0, n).
std::pair<std::size_t, std::size_t> retained_range(std::size_t n_coarse, int shift) {
    return shift == 0 ? std::pair<std::size_t, std::size_t>{0, n_coarse}
                      : std::pair<std::size_t, std::size_t>{1, n_coarse};
}

} // namespace

void validate_geometry(const DetectorGeometry& geometry) {
    require(geometry.pbf >= 1, "pixel binning factor must be at least 1");
    require(geometry.roi_fine >= 1, "ROI must be non-empty");
    require(!geometry.offsets.empty(), "at least one detector offset is required");
    if (geometry.roi_fine % geometry.pbf != 0) {
        throw InfeasibleGeometry("ROI side " + std::to_string(geometry.roi_fine) +
                                 " is not divisible by the binning factor " + std::to_string(geometry.pbf));
    }
}

Offset reduce_offset(Offset offset, std::size_t m) {
    const int mm = static_cast<int>(m);
    return {((offset.row % mm) + mm) % mm, ((offset.col % mm) + mm) % mm};
}

OffsetDedup deduplicate_offsets(std::span<const Offset> offsets, std::size_t m) {
    require(m >= 1, "pixel binning factor must be at least 1");
    OffsetDedup out;
    for (const Offset& o : offsets) {
        const Offset reduced = reduce_offset(o, m);
        if (std::find(out.unique.begin(), out.unique.end(), reduced) == out.unique.end()) {
            out.unique.push_back(reduced);
        } else {
            out.duplicates.push_back(o);
        }
    }
    return out;
}

std::vector<Offset> diagonal_positions(std::size_t m, std::size_t n_positions) {
    require(m >= 1, "pixel binning factor must be at least 1");
    std::vector<Offset> walk{Offset{}};
    for (int d = 1; d < static_cast<int>(m); ++d) {
        walk.push_back({d, d});
    }
    for (int d = 1; d < static_cast<int>(m); ++d) {
        walk.push_back({d, -d});
    }
    if (n_positions < walk.size()) {
        walk.resize(n_positions);
    }
    return walk;
}

std::vector<Offset> enumerate_diagonal_offsets(std::size_t m) {
    if (m == 0) {
        throw InvalidInput("pixel binning factor must be at least 1");
    }
    const auto walk = diagonal_positions(m, 2 * m);
    return deduplicate_offsets(walk, m).unique;
}

CoarseFrame bin_slice(const RealImage& fine, const DetectorGeometry& geometry, Offset offset) {
    validate_geometry(geometry);
    const std::size_t n = geometry.roi_fine;
    const std::size_t m = geometry.pbf;
    if (fine.rows() != n || fine.cols() != n) {
        throw InvalidInput("fine slice is " + std::to_string(fine.rows()) + "x" + std::to_string(fine.cols()) +
                           " but the ROI is " + std::to_string(n) + "x" + std::to_string(n));
    }
    const Offset o = reduce_offset(offset, m);
    const auto [r0, r1] = retained_range(n / m, o.row);
    const auto [c0, c1] = retained_range(n / m, o.col);

    CoarseFrame frame{o, r0, c0, RealImage(r1 - r0, c1 - c0)};
    for (std::size_t r = r0; r < r1; ++r) {
        for (std::size_t c = c0; c < c1; ++c) {
            frame.values(r - r0, c - c0) = block_sum(fine.data(), n, r * m - o.row, c * m - o.col, m);
        }
    }
    return frame;
}

std::vector<std::size_t> MeasurementSet::footprint(std::size_t i) const {
    const auto& e = entries.at(i);
    std::vector<std::size_t> out;
    out.reserve(pbf * pbf);
    for (std::size_t r = 0; r < pbf; ++r) {
        for (std::size_t c = 0; c < pbf; ++c) {
            out.push_back((e.fine_row + r) * roi_fine + e.fine_col + c);
        }
    }
    return out;
}

std::vector<double> MeasurementSet::values() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        out.push_back(e.value);
    }
    return out;
}

MeasurementOperator::MeasurementOperator(const DetectorGeometry& geometry)
    : roi_(geometry.roi_fine), pbf_(geometry.pbf) {
    validate_geometry(geometry);
    offsets_ = deduplicate_offsets(geometry.offsets, pbf_).unique;
    const std::size_t n_coarse = roi_ / pbf_;
    for (std::size_t id = 0; id < offsets_.size(); ++id) {
        frame_begin_.push_back(anchors_.size());
        const Offset o = offsets_[id];
        const auto [r0, r1] = retained_range(n_coarse, o.row);
        const auto [c0, c1] = retained_range(n_coarse, o.col);
        for (std::size_t r = r0; r < r1; ++r) {
            for (std::size_t c = c0; c < c1; ++c) {
                anchors_.push_back({static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(r),
                                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(r * pbf_ - o.row),
                                    static_cast<std::uint32_t>(c * pbf_ - o.col)});
            }
        }
    }
    frame_begin_.push_back(anchors_.size());
}

void MeasurementOperator::apply(std::span<const double> fine, std::span<double> measurements) const {
    require(fine.size() == cols() && measurements.size() == rows(), "operator dimension mismatch");
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
        measurements[i] = block_sum(fine.data(), roi_, anchors_[i].fine_row, anchors_[i].fine_col, pbf_);
    }
}

void MeasurementOperator::apply_adjoint(std::span<const double> measurements, std::span<double> fine) const {
    require(fine.size() == cols() && measurements.size() == rows(), "operator dimension mismatch");
    std::fill(fine.begin(), fine.end(), 0.0);
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
        const double v = measurements[i];
        for (std::size_t r = 0; r < pbf_; ++r) {
            double* line = fine.data() + (anchors_[i].fine_row + r) * roi_ + anchors_[i].fine_col;
            for (std::size_t c = 0; c < pbf_; ++c) {
                line[c] += v;
            }
        }
    }
}

MeasurementSet MeasurementOperator::measure(const RealImage& fine) const {
    require(fine.rows() == roi_ && fine.cols() == roi_, "fine slice does not match the ROI");
    std::vector<double> values(rows());
    apply(fine.values(), values);
    MeasurementSet set{roi_, pbf_, offsets_, {}};
    set.entries.reserve(rows());
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
        const auto& a = anchors_[i];
        set.entries.push_back({a.offset_id, a.coarse_row, a.coarse_col, a.fine_row, a.fine_col, values[i]});
    }
    return set;
}

std::pair<std::size_t, std::size_t> MeasurementOperator::frame_rows(std::size_t id) const {
    require(id + 1 < frame_begin_.size(), "offset id out of range");
    return {frame_begin_[id], frame_begin_[id + 1]};
}

std::uint64_t diagonal_position_cap(std::uint64_t m) {
    require(m >= 1, "pixel binning factor must be at least 1");
    return m % 2 == 0 ? 2 * m - 1 : 2 * m - 2;
}

std::uint64_t count_unique_constraints(std::uint64_t n_coarse, std::uint64_t m, std::uint64_t n_positions) {
    require(n_positions >= 1, "at least one detector position is required");
    const std::uint64_t further = std::min(n_positions - 1, diagonal_position_cap(m));
    return n_coarse * n_coarse + further * (n_coarse - 1) * (n_coarse - 1);
}

std::uint64_t unique_footprint_count(const DetectorGeometry& geometry) {
    const MeasurementOperator op(geometry);
    return op.rows();
}

double constraint_ratio(std::uint64_t n, std::uint64_t m, unsigned d) {
    require(n >= 1 && m >= 1 && d >= 1, "constraint ratio needs N, m, d >= 1");
    // (mN - m + 1) / (mN) keeps the m = 1 case exactly 1.
    const double num = static_cast<double>(m * n - m + 1);
    const double den = static_cast<double>(m * n);
    return std::pow(num / den, static_cast<double>(d));
}

double distance_multiplier(std::uint64_t m_constraints, std::uint64_t n_coarse) {
    require(n_coarse >= 1, "coarse grid must be non-empty");
    if (m_constraints < n_coarse * n_coarse) {
        throw InvalidInput("fewer constraints (" + std::to_string(m_constraints) + ") than a single " +
                           std::to_string(n_coarse) + "x" + std::to_string(n_coarse) + " frame");
    }
    return std::sqrt(static_cast<double>(m_constraints)) / static_cast<double>(n_coarse);
}

double max_distance_multiplier(std::uint64_t n_coarse, std::uint64_t m) {
    require(n_coarse >= 1 && m >= 1, "max distance multiplier needs N, m >= 1");
    return static_cast<double>(n_coarse + (m - 1) * (n_coarse - 1)) / static_cast<double>(n_coarse);
}

std::vector<DesignCell> design_tables(const DesignTableRequest& request) {
    require(!request.pbfs.empty(), "PBF range must be non-empty");
    require(request.min_positions >= 1 && request.min_positions <= request.max_positions,
            "positions range must be non-empty and start at 1 or more");
    const std::uint64_t threshold = feasibility_threshold(request.sparsity, request.fine_roi);

    std::vector<DesignCell> cells;
    for (std::uint64_t pbf : request.pbfs) {
        require(pbf >= 1 && request.fine_roi % pbf == 0, "PBF must divide the fine ROI");
        const std::uint64_t n = request.fine_roi / pbf;
        for (std::uint64_t p = request.min_positions; p <= request.max_positions; ++p) {
            DesignCell cell;
            cell.pbf = pbf;
            cell.positions = p;
            cell.constraints = count_unique_constraints(n, pbf, p);
            cell.f = distance_multiplier(cell.constraints, n);
            if (request.with_shading) {
                cell.below_threshold = cell.constraints < threshold;
                cell.saturated = p - 1 > diagonal_position_cap(pbf);
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

} // namespace bcdi
