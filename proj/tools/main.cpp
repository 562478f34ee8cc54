#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "bcdi/error.hpp"
#include "commands.hpp"

namespace {

// 0 ok, 2 invalid config or input, 3 infeasible geometry, 4 numerical failure.
int exit_code(bcdi::ErrorKind kind) {
    switch (kind) {
    case bcdi::ErrorKind::InvalidInput:
    case bcdi::ErrorKind::Io:
        return 2;
    case bcdi::ErrorKind::NyquistViolation:
    case bcdi::ErrorKind::InfeasibleGeometry:
        return 3;
    case bcdi::ErrorKind::Numerical:
        return 4;
    }
    return 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bragg CDI detector-binning simulation, sparse recovery and phase retrieval"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string output;
    std::optional<std::uint64_t> seed;
    std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
    bool verbose = false;
    app.add_option("--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
    app.add_option("--output", output, "Output directory (overrides output_dir)");
    app.add_option("--seed", seed, "Root random seed (overrides seed)");
    app.add_option("--threads", threads, "Worker threads")->envname("BCDI_THREADS")->check(CLI::PositiveNumber);
    app.add_flag("--verbose", verbose, "Progress messages on stderr");

    std::string input;
    std::string truth;
    std::string recovered;

    auto* simulate = app.add_subcommand("simulate", "Build the crystal and its diffraction intensity");
    auto* bin = app.add_subcommand("bin", "Bin an intensity volume at every detector offset");
    bin->add_option("--input", input, "Intensity container")->required()->check(CLI::ExistingFile);
    auto* recover = app.add_subcommand("recover", "Sparse recovery of a binned data set");
    recover->add_option("--input", input, "Directory written by `bin`")->required()->check(CLI::ExistingDirectory);
    auto* evaluate = app.add_subcommand("evaluate", "SRTF statistics");
    evaluate->add_option("--truth", truth, "Ground-truth intensity container")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--recovered", recovered, "Recovered volume; without it a PBF/position sweep runs")
        ->check(CLI::ExistingFile);
    auto* tables = app.add_subcommand("tables", "Constraint-count and distance-multiplier design tables");
    auto* retrieve = app.add_subcommand("retrieve", "Phase retrieval on an intensity volume");
    retrieve->add_option("--input", input, "Intensity container")->required()->check(CLI::ExistingFile);
    retrieve->add_option("--truth", truth, "Crystal container to compare against")->check(CLI::ExistingFile);
    auto* pipeline = app.add_subcommand("pipeline", "simulate, bin, recover, evaluate and retrieve end to end");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        bcdi::cli::Context ctx;
        ctx.config = config_path.empty() ? bcdi::ExperimentConfig{} : bcdi::load_config(config_path);
        if (seed) {
            ctx.config.seed = *seed;
            ctx.config.crystal.seed = *seed;
        }
        if (!output.empty()) {
            ctx.config.output_dir = output;
        }
        bcdi::validate_config(ctx.config);
        ctx.output = ctx.config.output_dir;
        ctx.threads = threads;
        ctx.verbose = verbose;

        auto optional_path = [](const std::string& s) {
            return s.empty() ? std::optional<std::filesystem::path>{} : std::filesystem::path(s);
        };
        if (simulate->parsed()) {
            bcdi::cli::simulate(ctx);
        } else if (bin->parsed()) {
            bcdi::cli::bin(ctx, input);
        } else if (recover->parsed()) {
            bcdi::cli::recover(ctx, input);
        } else if (evaluate->parsed()) {
            bcdi::cli::evaluate(ctx, truth, optional_path(recovered));
        } else if (tables->parsed()) {
            bcdi::cli::tables(ctx);
        } else if (retrieve->parsed()) {
            bcdi::cli::retrieve(ctx, input, optional_path(truth));
        } else if (pipeline->parsed()) {
            bcdi::cli::pipeline(ctx);
        }
    } catch (const bcdi::Error& e) {
        std::cerr << "bcdi: error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "bcdi: error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
