#include <benchmark/benchmark.h>

#include "bcdi/crystal.hpp"
#include "bcdi/detector.hpp"
#include "bcdi/recovery.hpp"

namespace {

using namespace bcdi;

const RealVolume& default_intensity() {
    static const RealVolume v = ground_truth_intensity(build_crystal(CrystalSpec{})).values;
    return v;
}

DetectorGeometry diagonal(std::size_t pbf, std::size_t positions) {
    DetectorGeometry g;
    g.pbf = pbf;
    g.offsets = diagonal_positions(pbf, positions);
    return g;
}

void BM_BinningApply(benchmark::State& state) {
    const MeasurementOperator op(diagonal(static_cast<std::size_t>(state.range(0)), 13));
    std::vector<double> fine(op.cols(), 1.0);
    std::vector<double> out(op.rows());
    for (auto _ : state) {
        op.apply(fine, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.counters["rows"] = static_cast<double>(op.rows());
}
BENCHMARK(BM_BinningApply)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_BinningAdjoint(benchmark::State& state) {
    const MeasurementOperator op(diagonal(static_cast<std::size_t>(state.range(0)), 13));
    std::vector<double> meas(op.rows(), 1.0);
    std::vector<double> fine(op.cols());
    for (auto _ : state) {
        op.apply_adjoint(meas, fine);
        benchmark::DoNotOptimize(fine.data());
    }
}
BENCHMARK(BM_BinningAdjoint)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_BinnedDctApply(benchmark::State& state) {
    const MeasurementOperator binning(diagonal(6, 13));
    const BinnedDctOperator op(binning);
    std::vector<double> coeffs(op.cols(), 1e-3);
    std::vector<double> out(op.rows());
    for (auto _ : state) {
        op.apply(coeffs, out);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_BinnedDctApply)->Unit(benchmark::kMicrosecond);

// One full LASSO recovery of the on-Bragg slice of the default crystal.
void BM_RecoverCentralSlice(benchmark::State& state) {
    const DetectorGeometry g = diagonal(static_cast<std::size_t>(state.range(0)), 13);
    const RealImage truth = roi_slice(default_intensity(), default_intensity().dim(2) / 2, g.roi_fine);
    const MeasurementSet set = MeasurementOperator(g).measure(truth);
    std::size_t iterations = 0;
    for (auto _ : state) {
        const SliceRecovery rec = recover_slice(set, g, RecoveryConfig{});
        iterations = rec.solution.iterations;
        benchmark::DoNotOptimize(rec.slice.data());
    }
    state.counters["solver_iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_RecoverCentralSlice)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond)->Iterations(1);

} // namespace
