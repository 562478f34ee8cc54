#include "bcdi/crystal.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bcdi/random.hpp"
#include "bcdi/transforms.hpp"

namespace bcdi {
namespace {

void validate(const CrystalSpec& spec) {
    for (std::size_t a = 0; a < 3; ++a) {
        require(spec.array_dims[a] > 0, "array dimensions must be positive");
        require(spec.box_dims[a] > 0, "box dimensions must be positive");
        if (spec.array_dims[a] < 2 * spec.box_dims[a]) {
            throw NyquistViolation("box span " + std::to_string(spec.box_dims[a]) + " on axis " + std::to_string(a) +
                                   " needs an array of at least " + std::to_string(2 * spec.box_dims[a]) +
                                   " voxels, got " + std::to_string(spec.array_dims[a]));
        }
    }
    for (const auto& cut : spec.facet_cuts) {
        const double norm = std::hypot(cut.normal[0], cut.normal[1], cut.normal[2]);
        require(norm > 0.0, "facet normal must be non-zero");
    }
    require(spec.phase.length_scale > 0.0 || spec.phase.model == PhaseModel::Zero,
            "phase length scale must be positive");
}

} // namespace

std::vector<FacetCut> edge_chamfers(double offset) {
    std::vector<FacetCut> cuts;
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = a + 1; b < 3; ++b) {
            for (double sa : {-1.0, 1.0}) {
                for (double sb : {-1.0, 1.0}) {
                    FacetCut cut;
                    cut.normal[a] = sa;
                    cut.normal[b] = sb;
                    cut.offset = offset;
                    cuts.push_back(cut);
                }
            }
        }
    }
    return cuts;
}

ComplexVolume build_crystal(const CrystalSpec& spec) {
    validate(spec);

    std::array<std::size_t, 3> start{};
    std::array<double, 3> center{};
    for (std::size_t a = 0; a < 3; ++a) {
        // Box center on the array origin floor(n/2); for even box sides the
        // extra voxel goes to the low side.
        start[a] = spec.array_dims[a] / 2 - spec.box_dims[a] / 2;
        center[a] = 0.5 * static_cast<double>(spec.box_dims[a] - 1);
    }

    std::vector<FacetCut> cuts = spec.facet_cuts;
    for (auto& cut : cuts) {
        const double norm = std::hypot(cut.normal[0], cut.normal[1], cut.normal[2]);
        for (double& n : cut.normal) {
            n /= norm;
        }
    }

    // Randomized phase parameters come from their own stream of the seed.
    SplitMix64 rng = SplitMix64(spec.seed).split(0x5048415345ULL);
    std::array<double, 3> direction{};
    std::array<double, 3> bump_center{};
    {
        const double u = rng.uniform();
        const double v = rng.uniform();
        const double cos_theta = 2.0 * u - 1.0;
        const double sin_theta = std::sqrt(1.0 - cos_theta * cos_theta);
        const double phi = 2.0 * std::numbers::pi * v;
        direction = {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
        for (std::size_t a = 0; a < 3; ++a) {
            // Bump center within the inner half of the box.
            bump_center[a] = (rng.uniform() - 0.5) * 0.5 * static_cast<double>(spec.box_dims[a]);
        }
    }

    const PhaseField& phase = spec.phase;
    auto phase_at = [&](const std::array<double, 3>& r) {
        switch (phase.model) {
        case PhaseModel::Zero:
            return 0.0;
        case PhaseModel::LinearGradient:
            return phase.amplitude * (direction[0] * r[0] + direction[1] * r[1] + direction[2] * r[2]) /
                   phase.length_scale;
        case PhaseModel::GaussianBump: {
            double d2 = 0.0;
            for (std::size_t a = 0; a < 3; ++a) {
                d2 += (r[a] - bump_center[a]) * (r[a] - bump_center[a]);
            }
            return phase.amplitude * std::exp(-d2 / (2.0 * phase.length_scale * phase.length_scale));
        }
        }
        return 0.0;
    };

    ComplexVolume crystal(spec.array_dims[0], spec.array_dims[1], spec.array_dims[2]);
    for (std::size_t i = 0; i < spec.box_dims[0]; ++i) {
        for (std::size_t j = 0; j < spec.box_dims[1]; ++j) {
            for (std::size_t k = 0; k < spec.box_dims[2]; ++k) {
                const std::array<double, 3> r{static_cast<double>(i) - center[0], static_cast<double>(j) - center[1],
                                              static_cast<double>(k) - center[2]};
                bool inside = true;
                for (const auto& cut : cuts) {
                    if (cut.normal[0] * r[0] + cut.normal[1] * r[1] + cut.normal[2] * r[2] > cut.offset) {
                        inside = false;
                        break;
                    }
                }
                if (!inside) {
                    continue;
                }
                const double phi = phase_at(r);
                crystal(start[0] + i, start[1] + j, start[2] + k) =
                    phi == 0.0 ? complex{1.0, 0.0} : std::polar(1.0, phi);
            }
        }
    }
    return crystal;
}

IntensityVolume ground_truth_intensity(const ComplexVolume& crystal) {
    const ComplexVolume spectrum = fft3_centered(crystal);
    IntensityVolume out{RealVolume(crystal.shape()), Provenance::GroundTruth};
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        out.values[i] = std::norm(spectrum[i]);
    }
    return out;
}

NyquistReport patterson_nyquist_check(const ComplexVolume& crystal) {
    NyquistReport report;
    std::array<std::size_t, 3> lo{crystal.dim(0), crystal.dim(1), crystal.dim(2)};
    std::array<std::size_t, 3> hi{};
    bool any = false;
    for (std::size_t i = 0; i < crystal.dim(0); ++i) {
        for (std::size_t j = 0; j < crystal.dim(1); ++j) {
            for (std::size_t k = 0; k < crystal.dim(2); ++k) {
                if (crystal(i, j, k) == complex{}) {
                    continue;
                }
                any = true;
                const std::array<std::size_t, 3> idx{i, j, k};
                for (std::size_t a = 0; a < 3; ++a) {
                    lo[a] = std::min(lo[a], idx[a]);
                    hi[a] = std::max(hi[a], idx[a]);
                }
            }
        }
    }
    report.pass = true;
    for (std::size_t a = 0; a < 3; ++a) {
        report.support_span[a] = any ? hi[a] - lo[a] + 1 : 0;
        report.margin[a] = static_cast<long long>(crystal.dim(a)) - 2 * static_cast<long long>(report.support_span[a]);
        report.pass = report.pass && report.margin[a] >= 0;
    }
    return report;
}

Volume<std::uint8_t> support_of(const ComplexVolume& volume, double relative_threshold) {
    double peak = 0.0;
    for (const auto& v : volume.values()) {
        peak = std::max(peak, std::abs(v));
    }
    Volume<std::uint8_t> support(volume.shape());
    const double cut = relative_threshold * peak;
    for (std::size_t i = 0; i < volume.size(); ++i) {
        const double mag = std::abs(volume[i]);
        support[i] = (mag > 0.0 && mag >= cut) ? 1 : 0;
    }
    return support;
}

} // namespace bcdi
