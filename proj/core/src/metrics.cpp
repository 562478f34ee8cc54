#include "bcdi/metrics.hpp"

#include <cmath>

#include "bcdi/parallel.hpp"

namespace bcdi {

SrtfReport srtf_map(const RealImage& recovered, const RealImage& ground_truth, double floor) {
    require(recovered.shape() == ground_truth.shape(), "recovered and ground truth slices differ in shape");
    require(floor >= 0.0, "SRTF floor must be non-negative");

    SrtfReport report;
    report.floor = floor;
    report.map = RealImage(ground_truth.shape());
    report.valid = Image<std::uint8_t>(ground_truth.shape());
    const double peak = ground_truth.empty() ? 0.0 : max_value(ground_truth.values());
    const double cut = floor * peak;

    double sum = 0.0;
    for (std::size_t i = 0; i < ground_truth.size(); ++i) {
        const double truth = ground_truth[i];
        if (truth > cut && truth > 0.0) {
            const double value = std::sqrt(std::max(recovered[i], 0.0) / truth);
            report.map[i] = value;
            report.valid[i] = 1;
            sum += value;
            ++report.n_valid;
        }
    }
    if (report.n_valid == 0) {
        throw InvalidInput("every pixel falls below the SRTF floor; nothing to report");
    }
    report.mean = sum / static_cast<double>(report.n_valid);
    double var = 0.0;
    for (std::size_t i = 0; i < report.map.size(); ++i) {
        if (report.valid[i]) {
            const double d = report.map[i] - report.mean;
            var += d * d;
        }
    }
    report.std = std::sqrt(var / static_cast<double>(report.n_valid));
    return report;
}

std::string to_string(SliceKind kind) { return kind == SliceKind::OnBragg ? "on-bragg" : "off-bragg"; }

std::size_t slice_index(SliceKind kind, std::size_t n_slices) {
    require(n_slices > 0, "volume has no slices");
    return kind == SliceKind::OnBragg ? n_slices / 2 : n_slices - 1;
}

std::vector<SrtfSweepRow> srtf_sweep(const RealVolume& ground_truth, const SrtfSweepRequest& request,
                                     const RecoveryConfig& config) {
    require(!request.pbfs.empty() && !request.positions.empty(), "sweep grid must be non-empty");
    struct Job {
        std::size_t pbf;
        std::size_t positions;
        SliceKind kind;
    };
    std::vector<Job> jobs;
    for (std::size_t pbf : request.pbfs) {
        for (std::size_t positions : request.positions) {
            require(positions >= 1, "position counts must be at least 1");
            jobs.push_back({pbf, positions, SliceKind::OnBragg});
            jobs.push_back({pbf, positions, SliceKind::OffBragg});
        }
    }

    std::vector<SrtfSweepRow> rows(jobs.size());
    parallel_for(jobs.size(), request.threads, [&](std::size_t j) {
        const Job& job = jobs[j];
        DetectorGeometry geometry;
        geometry.roi_fine = request.roi_fine;
        geometry.pbf = job.pbf;
        geometry.offsets = diagonal_positions(job.pbf, job.positions);

        const RealImage truth = roi_slice(ground_truth, slice_index(job.kind, ground_truth.dim(2)), request.roi_fine);
        const MeasurementOperator op(geometry);
        const SliceRecovery rec = recover_slice(op.measure(truth), geometry, config);
        const SrtfReport report = srtf_map(rec.slice, truth, request.floor);
        rows[j] = {job.pbf, job.positions, job.kind, report.mean, report.std, report.n_valid, request.floor};
    });
    return rows;
}

} // namespace bcdi
