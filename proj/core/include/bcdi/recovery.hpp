#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "bcdi/array.hpp"
#include "bcdi/crystal.hpp"
#include "bcdi/detector.hpp"
#include "bcdi/lasso.hpp"

namespace bcdi {

enum class NegativeHandling { ThresholdToZero, Keep };

struct RecoveryConfig {
    double alpha = 2e-4;
    std::size_t max_iterations = 5000;
    double convergence_tol = 1e-8;
    /// Scale measurements to unit maximum before solving, undo afterwards.
    bool normalize_slice = true;
    NegativeHandling negative_handling = NegativeHandling::ThresholdToZero;
    /// K used for the compressed-sensing feasibility warning.
    std::uint64_t sparsity = 1499;
};

void validate_recovery_config(const RecoveryConfig& config);

/// A∘B: orthonormal DCT coefficients -> fine image (inverse DCT) -> binned measurements.
class BinnedDctOperator final : public LinearOperator {
public:
    explicit BinnedDctOperator(const MeasurementOperator& binning);

    [[nodiscard]] std::size_t rows() const override { return binning_.rows(); }
    [[nodiscard]] std::size_t cols() const override { return binning_.cols(); }
    void apply(std::span<const double> coeffs, std::span<double> measurements) const override;
    void apply_adjoint(std::span<const double> measurements, std::span<double> coeffs) const override;

private:
    const MeasurementOperator& binning_;
    std::size_t side_;
    mutable std::vector<double> scratch_;
};

struct SliceRecovery {
    RealImage slice;
    SparseSolution solution;
    /// Measurement count below the compressed-sensing threshold; result is unreliable.
    bool infeasible_warning = false;
    double scale = 1.0;
};

/// Solves the DCT-sparse LASSO for one slice and maps the optimum back to the
/// fine grid. Throws InfeasibleGeometry with fewer measurements than one frame.
SliceRecovery recover_slice(const MeasurementSet& measurements, const DetectorGeometry& geometry,
                            const RecoveryConfig& config);

/// Coarse data of a whole volume: one stack per deduplicated offset, each of
/// shape (retained rows, retained cols, slices).
struct BinnedStacks {
    DetectorGeometry geometry;
    std::vector<CoarseFrame> layout;  // per offset, values() unused
    std::vector<RealVolume> stacks;
    std::vector<Offset> duplicates;   // requested offsets dropped by deduplication

    [[nodiscard]] std::size_t slice_count() const { return stacks.empty() ? 0 : stacks.front().dim(2); }
};

/// The central roi x roi window of slice `index` (along the last axis).
RealImage roi_slice(const RealVolume& volume, std::size_t index, std::size_t roi);

BinnedStacks bin_volume(const RealVolume& intensity, const DetectorGeometry& geometry);

/// Measurements of slice `index`, in MeasurementOperator row order.
MeasurementSet slice_measurements(const BinnedStacks& stacks, std::size_t index);

struct SliceLog {
    std::size_t slice = 0;
    std::size_t iterations = 0;
    double final_objective = 0.0;
    std::size_t nnz = 0;
    bool converged = false;
    /// Objective trace never rose by more than 1e-12 relative.
    bool monotone = true;
};

/// True when every entry of `trace` is at most its predecessor plus `slack`
/// times the predecessor's magnitude.
bool is_monotone(const std::vector<double>& trace, double slack = 1e-12);

struct VolumeRecovery {
    IntensityVolume volume;  // roi x roi x slices
    std::vector<SliceLog> log;
    bool infeasible_warning = false;
};

/// Recovers every slice independently. `threads` workers pull slices from a
/// shared counter; each result lands in its own slot so the output does not
/// depend on scheduling. `order`, when non-empty, is the processing order.
VolumeRecovery recover_volume(const BinnedStacks& stacks, const RecoveryConfig& config, std::size_t threads = 1,
                              const std::vector<std::size_t>& order = {});

/// Places a roi x roi x slices volume at the center of a full x full x slices array.
RealVolume embed_roi(const RealVolume& roi_volume, std::size_t full_rows, std::size_t full_cols);

} // namespace bcdi
