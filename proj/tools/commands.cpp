#include "commands.hpp"

#include <cstdio>
#include <iostream>

#include <json.hpp>

#include "bcdi/container.hpp"
#include "bcdi/crystal.hpp"
#include "bcdi/csv.hpp"
#include "bcdi/io.hpp"
#include "bcdi/metrics.hpp"
#include "bcdi/phasing.hpp"
#include "bcdi/recovery.hpp"
#include "bcdi/registration.hpp"

#ifndef BCDI_VERSION
#define BCDI_VERSION "unknown"
#endif

namespace bcdi::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

void note(const Context& ctx, const std::string& message) {
    if (ctx.verbose) {
        std::cerr << "bcdi: " << message << '\n';
    }
}

/// Records every input and output hash of one subcommand. No timestamps or
/// host details, so equal configs and inputs give byte-identical manifests.
class Manifest {
public:
    Manifest(const Context& ctx, const std::string& command) : dir_(ctx.output) {
        const std::string config_text = to_json(ctx.config);
        doc_["command"] = command;
        doc_["version"] = BCDI_VERSION;
        doc_["config_hash"] = io::hash_hex(config_text);
        doc_["config"] = json::parse(config_text);
        doc_["inputs"] = json::object();
        doc_["outputs"] = json::object();
    }

    void input(const fs::path& path) { doc_["inputs"][path.filename().string()] = io::hash_hex(io::read_file(path)); }

    void emit(const std::string& name, const std::string& bytes) {
        io::write_file_atomic(dir_ / name, bytes);
        doc_["outputs"][name] = io::hash_hex(bytes);
    }

    json& operator[](const std::string& key) { return doc_[key]; }

    void write() { io::write_file_atomic(dir_ / "manifest.json", doc_.dump(2) + "\n"); }

private:
    fs::path dir_;
    json doc_;
};

json offsets_json(const std::vector<Offset>& offsets) {
    json list = json::array();
    for (const auto& o : offsets) {
        list.push_back({o.row, o.col});
    }
    return list;
}

std::vector<Offset> offsets_from(const json& list) {
    std::vector<Offset> out;
    for (const auto& item : list) {
        out.push_back({item.at(0).get<int>(), item.at(1).get<int>()});
    }
    return out;
}

json read_json(const fs::path& path) {
    try {
        return json::parse(io::read_file(path));
    } catch (const json::exception& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

std::string stack_name(std::size_t id) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "stack_%02zu.bcd", id);
    return buf;
}

// Retrieval runs on the full simulation array; ROI-sized input (recovered
// data) is centered in it with zeros outside the ROI.
RealVolume to_array_size(const RealVolume& intensity, const CrystalSpec& crystal) {
    const auto& a = crystal.array_dims;
    if (intensity.dim(0) == a[0] && intensity.dim(1) == a[1]) {
        return intensity;
    }
    require(intensity.dim(0) <= a[0] && intensity.dim(1) <= a[1] && intensity.dim(2) == a[2],
            "intensity volume does not fit the configured array");
    return embed_roi(intensity, a[0], a[1]);
}

} // namespace

void simulate(const Context& ctx) {
    Manifest manifest(ctx, "simulate");
    note(ctx, "building crystal");
    const ComplexVolume crystal = build_crystal(ctx.config.crystal);
    const NyquistReport nyquist = patterson_nyquist_check(crystal);
    if (!nyquist.pass) {
        throw NyquistViolation("crystal support is too wide for the array");
    }
    note(ctx, "computing intensity");
    const IntensityVolume intensity = ground_truth_intensity(crystal);
    manifest.emit("crystal.bcd", encode(to_container(crystal)));
    manifest.emit("intensity.bcd", encode(to_container(intensity.values)));
    manifest["nyquist_margin"] = nyquist.margin;
    manifest["support_span"] = nyquist.support_span;
    manifest.write();
}

void bin(const Context& ctx, const fs::path& intensity_file) {
    Manifest manifest(ctx, "bin");
    manifest.input(intensity_file);
    const RealVolume intensity = to_real_volume(read_container(intensity_file));
    const DetectorGeometry geometry = ctx.config.geometry.resolve();
    note(ctx, "binning " + std::to_string(intensity.dim(2)) + " slices");
    const BinnedStacks stacks = bin_volume(intensity, geometry);

    json index;
    index["roi_fine"] = stacks.geometry.roi_fine;
    index["pbf"] = stacks.geometry.pbf;
    index["slices"] = stacks.slice_count();
    index["offsets"] = offsets_json(stacks.geometry.offsets);
    index["frames"] = json::array();
    for (std::size_t id = 0; id < stacks.stacks.size(); ++id) {
        const auto& frame = stacks.layout[id];
        const auto& stack = stacks.stacks[id];
        manifest.emit(stack_name(id), encode(to_container(stack)));
        index["frames"].push_back({{"file", stack_name(id)},
                                   {"offset", {frame.offset.row, frame.offset.col}},
                                   {"first_row", frame.first_row},
                                   {"first_col", frame.first_col},
                                   {"rows", stack.dim(0)},
                                   {"cols", stack.dim(1)}});
    }
    manifest.emit("measurements.json", index.dump(2) + "\n");
    manifest["dedup"] = {{"requested", offsets_json(geometry.offsets)},
                         {"unique", offsets_json(stacks.geometry.offsets)},
                         {"duplicates", offsets_json(stacks.duplicates)}};
    if (!stacks.duplicates.empty()) {
        std::cerr << "bcdi: " << stacks.duplicates.size() << " of " << geometry.offsets.size()
                  << " offsets repeat an earlier one modulo the binning factor; " << stacks.stacks.size()
                  << " unique stacks written\n";
    }
    manifest.write();
}

void recover(const Context& ctx, const fs::path& bin_dir) {
    Manifest manifest(ctx, "recover");
    const fs::path index_file = bin_dir / "measurements.json";
    manifest.input(index_file);
    const json index = read_json(index_file);

    BinnedStacks stacks;
    try {
        stacks.geometry.roi_fine = index.at("roi_fine").get<std::size_t>();
        stacks.geometry.pbf = index.at("pbf").get<std::size_t>();
        stacks.geometry.offsets = offsets_from(index.at("offsets"));
        stacks.geometry.scheme = OffsetScheme::Custom;
        for (const auto& frame : index.at("frames")) {
            const fs::path file = bin_dir / frame.at("file").get<std::string>();
            manifest.input(file);
            stacks.stacks.push_back(to_real_volume(read_container(file)));
            CoarseFrame layout;
            layout.offset = offsets_from(json::array({frame.at("offset")})).front();
            layout.first_row = frame.at("first_row").get<std::size_t>();
            layout.first_col = frame.at("first_col").get<std::size_t>();
            stacks.layout.push_back(layout);
        }
    } catch (const json::exception& e) {
        throw InvalidInput(index_file.string() + ": " + e.what());
    }
    validate_geometry(stacks.geometry);

    note(ctx, "recovering " + std::to_string(stacks.slice_count()) + " slices on " + std::to_string(ctx.threads) +
                  " threads");
    const VolumeRecovery result = recover_volume(stacks, ctx.config.recovery, ctx.threads);
    if (result.infeasible_warning) {
        std::cerr << "bcdi: measurement count is below the compressed-sensing threshold; recovery is unreliable\n";
    }

    std::string log;
    for (const auto& entry : result.log) {
        log += json{{"slice", entry.slice},
                    {"iterations", entry.iterations},
                    {"final_objective", entry.final_objective},
                    {"nnz", entry.nnz},
                    {"converged", entry.converged},
                    {"objective_monotone", entry.monotone}}
                   .dump() +
               "\n";
    }
    manifest.emit("recovered.bcd", encode(to_container(result.volume.values)));
    manifest.emit("solver_log.jsonl", log);
    manifest["infeasible_warning"] = result.infeasible_warning;
    manifest.write();
}

void evaluate(const Context& ctx, const fs::path& truth_file, const std::optional<fs::path>& recovered_file) {
    Manifest manifest(ctx, "evaluate");
    manifest.input(truth_file);
    const RealVolume truth = to_real_volume(read_container(truth_file));
    const double floor = ctx.config.evaluate.floor;

    if (recovered_file) {
        manifest.input(*recovered_file);
        const RealVolume recovered = to_real_volume(read_container(*recovered_file));
        require(recovered.dim(0) == recovered.dim(1), "recovered slices must be square");
        require(recovered.dim(2) == truth.dim(2), "recovered and truth volumes differ in slice count");
        std::vector<SrtfReport> reports;
        for (std::size_t s = 0; s < truth.dim(2); ++s) {
            reports.push_back(srtf_map(extract_slice(recovered, 2, s), roi_slice(truth, s, recovered.dim(0)), floor));
        }
        manifest.emit("srtf_slices.csv", csv::srtf_slices(reports));
    } else {
        SrtfSweepRequest request = ctx.config.evaluate;
        request.roi_fine = ctx.config.geometry.roi_fine;
        request.threads = ctx.threads;
        note(ctx, "running SRTF sweep");
        manifest.emit("srtf_sweep.csv", csv::srtf_sweep(srtf_sweep(truth, request, ctx.config.recovery)));
    }
    manifest.write();
}

void tables(const Context& ctx) {
    Manifest manifest(ctx, "tables");
    manifest.emit("design_tables.csv", csv::design_table(design_tables(ctx.config.tables)));
    manifest.write();
}

void retrieve(const Context& ctx, const fs::path& intensity_file, const std::optional<fs::path>& truth_file) {
    Manifest manifest(ctx, "retrieve");
    manifest.input(intensity_file);
    const RealVolume intensity = to_array_size(to_real_volume(read_container(intensity_file)), ctx.config.crystal);
    note(ctx, "running phase retrieval");
    const RetrievalResult result = run_recipe(intensity, ctx.config.recipe, ctx.config.seed);
    manifest.emit("reconstruction.bcd", encode(to_container(result.object)));
    manifest.emit("error_history.csv", csv::error_history(result.error_history));
    if (truth_file) {
        manifest.input(*truth_file);
        const ComplexVolume truth = to_complex_volume(read_container(*truth_file));
        const Comparison cmp = register_and_compare(result.object, truth);
        const json report{{"support_overlap", cmp.support_overlap},
                          {"phase_rmse", cmp.phase_rmse},
                          {"conjugate_flipped", cmp.conjugate_flipped},
                          {"shift", cmp.shift},
                          {"phase_offset", cmp.phase_offset},
                          {"support_threshold", kDefaultSupportThreshold}};
        manifest.emit("comparison.json", report.dump(2) + "\n");
    }
    manifest.write();
}

void pipeline(const Context& ctx) {
    auto stage = [&](const std::string& name) {
        Context sub = ctx;
        sub.output = ctx.output / name;
        return sub;
    };
    const Context sim = stage("simulate");
    const Context binned = stage("bin");
    const Context recovered = stage("recover");
    const Context baseline = stage("retrieve-baseline");
    const Context from_recovered = stage("retrieve-recovered");

    simulate(sim);
    bin(binned, sim.output / "intensity.bcd");
    recover(recovered, binned.output);
    evaluate(stage("evaluate"), sim.output / "intensity.bcd", recovered.output / "recovered.bcd");
    retrieve(baseline, sim.output / "intensity.bcd", sim.output / "crystal.bcd");
    retrieve(from_recovered, recovered.output / "recovered.bcd", sim.output / "crystal.bcd");

    const double base = read_json(baseline.output / "comparison.json").at("support_overlap").get<double>();
    const double rec = read_json(from_recovered.output / "comparison.json").at("support_overlap").get<double>();
    const json report{{"baseline_overlap", base},
                      {"recovered_overlap", rec},
                      {"overlap_difference", rec - base},
                      {"infeasible_warning",
                       read_json(recovered.output / "manifest.json").at("infeasible_warning").get<bool>()}};
    io::write_file_atomic(ctx.output / "report.json", report.dump(2) + "\n");
    std::cout << "baseline overlap " << base << ", recovered overlap " << rec << '\n';
}

} // namespace bcdi::cli
