#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bcdi/array.hpp"

namespace bcdi {

enum class Algorithm { ER, HIO, SF };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& name);

struct Stage {
    Algorithm algorithm = Algorithm::ER;
    std::size_t iterations = 0;
    double beta = 0.0;  // HIO only
};

struct ShrinkwrapParams {
    double sigma = 1.0;      // Gaussian smoothing width, voxels
    double threshold = 0.1;  // fraction of the smoothed maximum
};

struct Recipe {
    std::vector<Stage> stages;
    std::size_t shrinkwrap_period = 25;
    ShrinkwrapParams shrinkwrap;
};

/// SF(400) -> HIO(0.8, 240) -> SF(400) -> ER(100), shrinkwrap every 25 iterations.
Recipe default_recipe();

void validate_recipe(const Recipe& recipe);

struct ErrorRecord {
    std::size_t iteration = 0;
    Algorithm stage = Algorithm::ER;
    double error = 0.0;
};

/// Iterate of a retrieval run. Arrays are held in FFT order (origin at index
/// 0) so a step costs two transforms and no shifts; use make_state and the
/// centered_* accessors to move between that and the centered layout used
/// everywhere else.
struct RetrievalState {
    ComplexVolume object;
    Volume<std::uint8_t> support;
    RealVolume measured_modulus;
    /// Bins whose modulus was measured. Empty means every bin. Unmeasured
    /// bins keep their computed value during the modulus projection.
    Volume<std::uint8_t> measured_mask;
    std::size_t iteration = 0;
    std::vector<ErrorRecord> error_history;
};

/// Builds a state from centered arrays. `mask` may be empty.
RetrievalState make_state(const ComplexVolume& object, const Volume<std::uint8_t>& support,
                          const RealVolume& modulus, const Volume<std::uint8_t>& mask = {});

ComplexVolume centered_object(const RetrievalState& state);
Volume<std::uint8_t> centered_support(const RetrievalState& state);

/// Replaces the Fourier modulus of a centered object by `modulus`, keeping
/// the phase. Bins with zero computed amplitude take phase 0.
ComplexVolume modulus_project(const ComplexVolume& object, const RealVolume& modulus);

/// sqrt(sum (|F| - M)^2 / sum M^2) over measured bins.
double fourier_modulus_error(const ComplexVolume& object, const RealVolume& modulus);

void er_step(RetrievalState& state);
void hio_step(RetrievalState& state, double beta);
void sf_step(RetrievalState& state);

/// New support = voxels whose Gaussian-smoothed amplitude reaches
/// threshold * max. Throws NumericalFailure if nothing survives.
void shrinkwrap(RetrievalState& state, const ShrinkwrapParams& params);

/// Centered box 1.5x the half-span of the autocorrelation on each axis.
Volume<std::uint8_t> initial_support(const RealVolume& intensity);

struct RetrievalResult {
    ComplexVolume object;  // centered
    Volume<std::uint8_t> support;
    std::vector<ErrorRecord> error_history;
};

/// Runs the recipe on a centered intensity volume starting from random
/// Fourier phases drawn from `seed`.
RetrievalResult run_recipe(const RealVolume& intensity, const Recipe& recipe, std::uint64_t seed,
                           const Volume<std::uint8_t>& measured_mask = {});

} // namespace bcdi
