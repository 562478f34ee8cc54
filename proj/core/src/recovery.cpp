#include "bcdi/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcdi/parallel.hpp"
#include "bcdi/sparsity.hpp"
#include "bcdi/transforms.hpp"

namespace bcdi {

void validate_recovery_config(const RecoveryConfig& config) {
    require(config.alpha > 0.0, "alpha must be positive");
    require(config.convergence_tol > 0.0, "convergence tolerance must be positive");
    require(config.max_iterations > 0, "max_iterations must be positive");
    require(config.sparsity >= 1, "sparsity must be at least 1");
}

BinnedDctOperator::BinnedDctOperator(const MeasurementOperator& binning)
    : binning_(binning), side_(static_cast<std::size_t>(std::lround(std::sqrt(binning.cols())))),
      scratch_(binning.cols()) {}

void BinnedDctOperator::apply(std::span<const double> coeffs, std::span<double> measurements) const {
    std::copy(coeffs.begin(), coeffs.end(), scratch_.begin());
    idct2_orthonormal_inplace(scratch_, side_);
    binning_.apply(scratch_, measurements);
}

void BinnedDctOperator::apply_adjoint(std::span<const double> measurements, std::span<double> coeffs) const {
    binning_.apply_adjoint(measurements, coeffs);
    dct2_orthonormal_inplace(coeffs, side_);
}

SliceRecovery recover_slice(const MeasurementSet& measurements, const DetectorGeometry& geometry,
                            const RecoveryConfig& config) {
    validate_recovery_config(config);
    validate_geometry(geometry);
    require(measurements.roi_fine == geometry.roi_fine && measurements.pbf == geometry.pbf,
            "measurements were taken with a different geometry");

    const MeasurementOperator binning(geometry);
    require(binning.rows() == measurements.entries.size(), "measurement count does not match the geometry");
    const std::size_t n_coarse = geometry.coarse_side();
    const std::size_t m_count = measurements.entries.size();
    if (m_count < n_coarse * n_coarse) {
        throw InfeasibleGeometry(std::to_string(m_count) + " measurements is fewer than one " +
                                 std::to_string(n_coarse) + "x" + std::to_string(n_coarse) + " frame");
    }

    std::vector<double> y = measurements.values();
    for (double v : y) {
        if (!std::isfinite(v)) {
            throw InvalidInput("measurements contain non-finite values");
        }
    }

    SliceRecovery out;
    const std::size_t side = geometry.roi_fine;
    const std::size_t unknowns = side * side;
    out.infeasible_warning = config.sparsity < unknowns &&
                             m_count < feasibility_threshold(config.sparsity, side);

    if (config.normalize_slice) {
        const double peak = *std::max_element(y.begin(), y.end());
        if (peak > 0.0) {
            out.scale = peak;
            for (double& v : y) {
                v /= peak;
            }
        }
    }

    if (geometry.pbf == 1) {
        // Unit blocks at the only possible offset: the operator is the
        // identity and the data already is the fine slice.
        out.slice = RealImage(side, side);
        for (std::size_t i = 0; i < m_count; ++i) {
            const auto& e = measurements.entries[i];
            out.slice(e.fine_row, e.fine_col) = y[i] * out.scale;
        }
        out.solution.converged = true;
        const Spectrum2D spectrum = dct2(out.slice, DctNormalization::Orthonormal);
        out.solution.x.assign(spectrum.coeffs.values().begin(), spectrum.coeffs.values().end());
        out.solution.nnz = static_cast<std::size_t>(std::count_if(
            out.solution.x.begin(), out.solution.x.end(), [](double c) { return std::abs(c) > kNonzeroThreshold; }));
    } else {
        const BinnedDctOperator op(binning);
        LassoOptions options{config.alpha, config.max_iterations, config.convergence_tol};
        out.solution = lasso_solve(op, y, options);
        out.slice = RealImage(side, side, out.solution.x);
        idct2_orthonormal_inplace(out.slice.values(), side);
        for (double& v : out.slice.values()) {
            v *= out.scale;
        }
    }

    if (config.negative_handling == NegativeHandling::ThresholdToZero) {
        for (double& v : out.slice.values()) {
            v = std::max(v, 0.0);
        }
    }
    return out;
}

bool is_monotone(const std::vector<double>& trace, double slack) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i] > trace[i - 1] + slack * std::abs(trace[i - 1])) {
            return false;
        }
    }
    return true;
}

RealImage roi_slice(const RealVolume& volume, std::size_t index, std::size_t roi) {
    require(roi <= volume.dim(0) && roi <= volume.dim(1), "ROI is larger than the detector");
    const RealImage slice = extract_slice(volume, 2, index);
    return crop(slice, (volume.dim(0) - roi) / 2, (volume.dim(1) - roi) / 2, roi, roi);
}

BinnedStacks bin_volume(const RealVolume& intensity, const DetectorGeometry& geometry) {
    validate_geometry(geometry);
    BinnedStacks out;
    out.geometry = geometry;
    const auto dedup = deduplicate_offsets(geometry.offsets, geometry.pbf);
    out.geometry.offsets = dedup.unique;
    out.duplicates = dedup.duplicates;

    const std::size_t n_slices = intensity.dim(2);
    for (std::size_t s = 0; s < n_slices; ++s) {
        const RealImage fine = roi_slice(intensity, s, geometry.roi_fine);
        for (std::size_t id = 0; id < out.geometry.offsets.size(); ++id) {
            CoarseFrame frame = bin_slice(fine, out.geometry, out.geometry.offsets[id]);
            if (s == 0) {
                out.stacks.emplace_back(frame.values.rows(), frame.values.cols(), n_slices);
                out.layout.push_back(CoarseFrame{frame.offset, frame.first_row, frame.first_col, RealImage{}});
            }
            insert_slice(out.stacks[id], 2, s, frame.values);
        }
    }
    return out;
}

MeasurementSet slice_measurements(const BinnedStacks& stacks, std::size_t index) {
    require(index < stacks.slice_count(), "slice index out of range");
    const MeasurementOperator op(stacks.geometry);
    require(op.offsets().size() == stacks.stacks.size(), "stack count does not match the geometry offsets");
    std::vector<double> values;
    values.reserve(op.rows());
    for (std::size_t id = 0; id < stacks.stacks.size(); ++id) {
        const RealImage frame = extract_slice(stacks.stacks[id], 2, index);
        const auto [begin, end] = op.frame_rows(id);
        require(frame.size() == end - begin, "stack shape does not match the offset frame");
        values.insert(values.end(), frame.values().begin(), frame.values().end());
    }
    // Footprints come from the operator; values are swapped in afterwards.
    MeasurementSet set = op.measure(RealImage(stacks.geometry.roi_fine, stacks.geometry.roi_fine));
    for (std::size_t i = 0; i < set.entries.size(); ++i) {
        set.entries[i].value = values[i];
    }
    return set;
}

VolumeRecovery recover_volume(const BinnedStacks& stacks, const RecoveryConfig& config, std::size_t threads,
                              const std::vector<std::size_t>& order) {
    validate_recovery_config(config);
    const std::size_t n_slices = stacks.slice_count();
    const std::size_t side = stacks.geometry.roi_fine;
    std::vector<std::size_t> schedule = order;
    if (schedule.empty()) {
        schedule.resize(n_slices);
        for (std::size_t i = 0; i < n_slices; ++i) {
            schedule[i] = i;
        }
    }
    require(schedule.size() == n_slices, "processing order must list every slice once");

    std::vector<SliceRecovery> results(n_slices);
    parallel_for(n_slices, threads, [&](std::size_t job) {
        const std::size_t s = schedule[job];
        try {
            results[s] = recover_slice(slice_measurements(stacks, s), stacks.geometry, config);
        } catch (const Error& e) {
            throw Error(e.kind(), "slice " + std::to_string(s) + ": " + e.what());
        }
    });

    VolumeRecovery out;
    out.volume = IntensityVolume{RealVolume(side, side, n_slices), Provenance::Recovered};
    for (std::size_t s = 0; s < n_slices; ++s) {
        insert_slice(out.volume.values, 2, s, results[s].slice);
        const auto& sol = results[s].solution;
        out.log.push_back({s, sol.iterations, sol.objective_trace.empty() ? 0.0 : sol.objective_trace.back(),
                           sol.nnz, sol.converged, is_monotone(sol.objective_trace)});
        out.infeasible_warning = out.infeasible_warning || results[s].infeasible_warning;
    }
    return out;
}

RealVolume embed_roi(const RealVolume& roi_volume, std::size_t full_rows, std::size_t full_cols) {
    require(roi_volume.dim(0) <= full_rows && roi_volume.dim(1) <= full_cols, "ROI larger than the target array");
    RealVolume out(full_rows, full_cols, roi_volume.dim(2));
    const std::size_t r0 = (full_rows - roi_volume.dim(0)) / 2;
    const std::size_t c0 = (full_cols - roi_volume.dim(1)) / 2;
    for (std::size_t i = 0; i < roi_volume.dim(0); ++i) {
        for (std::size_t j = 0; j < roi_volume.dim(1); ++j) {
            for (std::size_t k = 0; k < roi_volume.dim(2); ++k) {
                out(r0 + i, c0 + j, k) = roi_volume(i, j, k);
            }
        }
    }
    return out;
}

} // namespace bcdi
