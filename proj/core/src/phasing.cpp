#include "bcdi/phasing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bcdi/fft.hpp"
#include "bcdi/random.hpp"
#include "bcdi/transforms.hpp"

namespace bcdi {
namespace {

std::array<std::size_t, 3> dims_of(const Shape3& shape) { return shape.dims; }

void forward(ComplexVolume& v) {
    const auto dims = dims_of(v.shape());
    fft::c2c(v.values(), dims, fft::Direction::Forward);
}

void inverse(ComplexVolume& v) {
    const auto dims = dims_of(v.shape());
    fft::c2c(v.values(), dims, fft::Direction::Inverse);
    const double scale = 1.0 / static_cast<double>(v.size());
    for (auto& x : v.values()) {
        x *= scale;
    }
}

// Projects the FFT-order object onto the measured modulus in place and
// returns the modulus error of the input.
double project_native(ComplexVolume& object, const RealVolume& modulus, const Volume<std::uint8_t>& mask) {
    forward(object);
    double num = 0.0;
    double den = 0.0;
    const bool masked = !mask.empty();
    for (std::size_t i = 0; i < object.size(); ++i) {
        if (masked && mask[i] == 0) {
            continue;
        }
        const double target = modulus[i];
        const double amp = std::abs(object[i]);
        num += (amp - target) * (amp - target);
        den += target * target;
        object[i] = amp > 0.0 ? object[i] * (target / amp) : complex{target, 0.0};
    }
    inverse(object);
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

void check_state(const RetrievalState& state) {
    require(state.object.shape() == state.support.shape() && state.object.shape() == state.measured_modulus.shape(),
            "object, support and modulus must share one shape");
    require(state.measured_mask.empty() || state.measured_mask.shape() == state.object.shape(),
            "measured mask must match the object shape");
    if (std::none_of(state.support.values().begin(), state.support.values().end(),
                     [](std::uint8_t s) { return s != 0; })) {
        throw InvalidInput("support is empty");
    }
}

enum class Outside { Zero, Feedback, Flip };

void step(RetrievalState& state, Algorithm algorithm, Outside rule, double beta) {
    check_state(state);
    ComplexVolume projected = state.object;
    const double error = project_native(projected, state.measured_modulus, state.measured_mask);
    for (std::size_t i = 0; i < projected.size(); ++i) {
        if (state.support[i]) {
            state.object[i] = projected[i];
            continue;
        }
        switch (rule) {
        case Outside::Zero:
            state.object[i] = complex{};
            break;
        case Outside::Feedback:
            state.object[i] -= beta * projected[i];
            break;
        case Outside::Flip:
            state.object[i] = -projected[i];
            break;
        }
    }
    ++state.iteration;
    state.error_history.push_back({state.iteration, algorithm, error});
}

// Periodic separable Gaussian blur along one axis.
void blur_axis(RealVolume& v, std::size_t axis, const std::vector<double>& kernel) {
    const long radius = static_cast<long>(kernel.size() / 2);
    const auto& d = v.shape().dims;
    const long n = static_cast<long>(d[axis]);
    std::array<std::size_t, 3> stride{d[1] * d[2], d[2], 1};
    std::vector<double> line(d[axis]);
    std::array<std::size_t, 3> idx{};
    const std::size_t a1 = (axis + 1) % 3;
    const std::size_t a2 = (axis + 2) % 3;
    for (idx[a1] = 0; idx[a1] < d[a1]; ++idx[a1]) {
        for (idx[a2] = 0; idx[a2] < d[a2]; ++idx[a2]) {
            idx[axis] = 0;
            const std::size_t base = idx[0] * stride[0] + idx[1] * stride[1] + idx[2] * stride[2];
            for (long x = 0; x < n; ++x) {
                double sum = 0.0;
                for (long t = -radius; t <= radius; ++t) {
                    const long src = ((x + t) % n + n) % n;
                    sum += kernel[static_cast<std::size_t>(t + radius)] * v[base + static_cast<std::size_t>(src) * stride[axis]];
                }
                line[static_cast<std::size_t>(x)] = sum;
            }
            for (long x = 0; x < n; ++x) {
                v[base + static_cast<std::size_t>(x) * stride[axis]] = line[static_cast<std::size_t>(x)];
            }
        }
    }
}

} // namespace

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::ER:
        return "ER";
    case Algorithm::HIO:
        return "HIO";
    case Algorithm::SF:
        return "SF";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& name) {
    std::string upper = name;
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    if (upper == "ER") {
        return Algorithm::ER;
    }
    if (upper == "HIO") {
        return Algorithm::HIO;
    }
    if (upper == "SF") {
        return Algorithm::SF;
    }
    throw InvalidInput("unknown phasing algorithm '" + name + "' (expected ER, HIO or SF)");
}

Recipe default_recipe() {
    Recipe recipe;
    recipe.stages = {{Algorithm::SF, 400, 0.0},
                     {Algorithm::HIO, 240, 0.8},
                     {Algorithm::SF, 400, 0.0},
                     {Algorithm::ER, 100, 0.0}};
    return recipe;
}

void validate_recipe(const Recipe& recipe) {
    require(!recipe.stages.empty(), "recipe needs at least one stage");
    for (const auto& stage : recipe.stages) {
        require(stage.iterations > 0, "every stage needs a positive iteration count");
        require(std::isfinite(stage.beta), "beta must be finite");
    }
    require(recipe.shrinkwrap_period > 0, "shrinkwrap period must be positive");
    require(recipe.shrinkwrap.sigma >= 0.0, "shrinkwrap sigma must be non-negative");
    require(recipe.shrinkwrap.threshold >= 0.0 && recipe.shrinkwrap.threshold <= 1.0,
            "shrinkwrap threshold must lie in [0, 1]");
}

RetrievalState make_state(const ComplexVolume& object, const Volume<std::uint8_t>& support, const RealVolume& modulus,
                          const Volume<std::uint8_t>& mask) {
    RetrievalState state;
    state.object = fft::ifftshift(object);
    state.support = fft::ifftshift(support);
    state.measured_modulus = fft::ifftshift(modulus);
    if (!mask.empty()) {
        state.measured_mask = fft::ifftshift(mask);
    }
    for (double m : state.measured_modulus.values()) {
        require(m >= 0.0 && std::isfinite(m), "measured modulus must be finite and non-negative");
    }
    check_state(state);
    return state;
}

ComplexVolume centered_object(const RetrievalState& state) { return fft::fftshift(state.object); }

Volume<std::uint8_t> centered_support(const RetrievalState& state) { return fft::fftshift(state.support); }

ComplexVolume modulus_project(const ComplexVolume& object, const RealVolume& modulus) {
    require(object.shape() == modulus.shape(), "object and modulus must share one shape");
    ComplexVolume native = fft::ifftshift(object);
    project_native(native, fft::ifftshift(modulus), {});
    return fft::fftshift(native);
}

double fourier_modulus_error(const ComplexVolume& object, const RealVolume& modulus) {
    require(object.shape() == modulus.shape(), "object and modulus must share one shape");
    const ComplexVolume spectrum = fft3_centered(object);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        const double d = std::abs(spectrum[i]) - modulus[i];
        num += d * d;
        den += modulus[i] * modulus[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

void er_step(RetrievalState& state) { step(state, Algorithm::ER, Outside::Zero, 0.0); }

void hio_step(RetrievalState& state, double beta) { step(state, Algorithm::HIO, Outside::Feedback, beta); }

void sf_step(RetrievalState& state) { step(state, Algorithm::SF, Outside::Flip, 0.0); }

void shrinkwrap(RetrievalState& state, const ShrinkwrapParams& params) {
    require(params.sigma >= 0.0 && params.threshold >= 0.0, "shrinkwrap parameters must be non-negative");
    RealVolume amp(state.object.shape());
    for (std::size_t i = 0; i < amp.size(); ++i) {
        amp[i] = std::abs(state.object[i]);
    }
    if (params.sigma > 0.0) {
        const auto radius = static_cast<std::size_t>(std::ceil(4.0 * params.sigma));
        std::vector<double> kernel(2 * radius + 1);
        double total = 0.0;
        for (std::size_t t = 0; t < kernel.size(); ++t) {
            const double x = static_cast<double>(t) - static_cast<double>(radius);
            kernel[t] = std::exp(-0.5 * x * x / (params.sigma * params.sigma));
            total += kernel[t];
        }
        for (double& k : kernel) {
            k /= total;
        }
        for (std::size_t axis = 0; axis < 3; ++axis) {
            if (amp.dim(axis) > 1) {
                blur_axis(amp, axis, kernel);
            }
        }
    }
    const double cut = params.threshold * max_value(std::span<const double>(amp.values()));
    std::size_t count = 0;
    for (std::size_t i = 0; i < amp.size(); ++i) {
        state.support[i] = amp[i] >= cut ? 1 : 0;
        count += state.support[i];
    }
    if (count == 0 || !std::isfinite(cut)) {
        throw NumericalFailure("shrinkwrap left an empty support");
    }
}

Volume<std::uint8_t> initial_support(const RealVolume& intensity) {
    // The autocorrelation is the inverse transform of the intensity.
    ComplexVolume patterson(intensity.shape());
    for (std::size_t i = 0; i < intensity.size(); ++i) {
        patterson[i] = intensity[i];
    }
    patterson = ifft3_centered(patterson);
    double peak = 0.0;
    for (const auto& v : patterson.values()) {
        peak = std::max(peak, std::abs(v));
    }
    require(peak > 0.0, "intensity is identically zero");

    const auto& d = intensity.shape().dims;
    std::array<std::size_t, 3> half{};
    const double cut = 1e-2 * peak;
    for (std::size_t i = 0; i < d[0]; ++i) {
        for (std::size_t j = 0; j < d[1]; ++j) {
            for (std::size_t k = 0; k < d[2]; ++k) {
                if (std::abs(patterson(i, j, k)) < cut) {
                    continue;
                }
                const std::array<std::size_t, 3> idx{i, j, k};
                for (std::size_t a = 0; a < 3; ++a) {
                    const std::size_t c = d[a] / 2;
                    half[a] = std::max(half[a], idx[a] > c ? idx[a] - c : c - idx[a]);
                }
            }
        }
    }
    Volume<std::uint8_t> support(intensity.shape());
    std::array<std::size_t, 3> lo{};
    std::array<std::size_t, 3> hi{};
    for (std::size_t a = 0; a < 3; ++a) {
        const auto side = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(half[a]))), 1, d[a]);
        lo[a] = d[a] / 2 - std::min(d[a] / 2, side / 2);
        hi[a] = std::min(d[a], lo[a] + side);
    }
    for (std::size_t i = lo[0]; i < hi[0]; ++i) {
        for (std::size_t j = lo[1]; j < hi[1]; ++j) {
            for (std::size_t k = lo[2]; k < hi[2]; ++k) {
                support(i, j, k) = 1;
            }
        }
    }
    return support;
}

RetrievalResult run_recipe(const RealVolume& intensity, const Recipe& recipe, std::uint64_t seed,
                           const Volume<std::uint8_t>& measured_mask) {
    validate_recipe(recipe);
    RealVolume modulus(intensity.shape());
    for (std::size_t i = 0; i < intensity.size(); ++i) {
        require(std::isfinite(intensity[i]) && intensity[i] >= 0.0, "intensity must be finite and non-negative");
        modulus[i] = std::sqrt(intensity[i]);
    }
    const Volume<std::uint8_t> support = initial_support(intensity);

    // Measured amplitudes with uniform random phases as the starting guess.
    SplitMix64 rng = SplitMix64(seed).split(0x52455452ULL);
    ComplexVolume start(intensity.shape());
    for (std::size_t i = 0; i < start.size(); ++i) {
        const double phi = 2.0 * std::numbers::pi * rng.uniform();
        start[i] = std::polar(modulus[i], phi);
    }
    start = ifft3_centered(start);
    const auto& sup = support.values();
    for (std::size_t i = 0; i < start.size(); ++i) {
        if (!sup[i]) {
            start[i] = complex{};
        }
    }

    RetrievalState state = make_state(start, support, modulus, measured_mask);
    for (const auto& stage : recipe.stages) {
        for (std::size_t it = 0; it < stage.iterations; ++it) {
            switch (stage.algorithm) {
            case Algorithm::ER:
                er_step(state);
                break;
            case Algorithm::HIO:
                hio_step(state, stage.beta);
                break;
            case Algorithm::SF:
                sf_step(state);
                break;
            }
            if (!std::isfinite(state.error_history.back().error)) {
                throw NumericalFailure("phase retrieval diverged at iteration " + std::to_string(state.iteration));
            }
            if (state.iteration % recipe.shrinkwrap_period == 0) {
                shrinkwrap(state, recipe.shrinkwrap);
            }
        }
    }
    return {centered_object(state), centered_support(state), std::move(state.error_history)};
}

} // namespace bcdi
