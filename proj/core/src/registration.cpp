#include "bcdi/registration.hpp"

#include <cmath>

#include "bcdi/fft.hpp"

namespace bcdi {
namespace {

ComplexVolume amplitude_spectrum(const ComplexVolume& v) {
    ComplexVolume out(v.shape());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::abs(v[i]);
    }
    fft::c2c(out.values(), v.shape().dims, fft::Direction::Forward);
    return out;
}

struct Peak {
    double value = -1.0;
    std::array<long long, 3> shift{};
};

// Translation maximizing sum |truth(r)| |moving(r - t)|, found by FFT.
Peak best_shift(const ComplexVolume& truth_spectrum, const ComplexVolume& moving) {
    ComplexVolume corr = amplitude_spectrum(moving);
    for (std::size_t i = 0; i < corr.size(); ++i) {
        corr[i] = truth_spectrum[i] * std::conj(corr[i]);
    }
    fft::c2c(corr.values(), corr.shape().dims, fft::Direction::Inverse);
    Peak peak;
    const auto& d = corr.shape().dims;
    for (std::size_t i = 0; i < d[0]; ++i) {
        for (std::size_t j = 0; j < d[1]; ++j) {
            for (std::size_t k = 0; k < d[2]; ++k) {
                const double v = corr(i, j, k).real();
                if (v > peak.value) {
                    peak.value = v;
                    const std::array<std::size_t, 3> idx{i, j, k};
                    for (std::size_t a = 0; a < 3; ++a) {
                        // Report the shortest equivalent shift.
                        const auto n = static_cast<long long>(d[a]);
                        auto s = static_cast<long long>(idx[a]);
                        peak.shift[a] = s > n / 2 ? s - n : s;
                    }
                }
            }
        }
    }
    return peak;
}

Volume<std::uint8_t> threshold_support(const ComplexVolume& v, double rel) {
    double peak = 0.0;
    for (const auto& x : v.values()) {
        peak = std::max(peak, std::abs(x));
    }
    Volume<std::uint8_t> s(v.shape());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        s[i] = (a > 0.0 && a >= rel * peak) ? 1 : 0;
    }
    return s;
}

} // namespace

ComplexVolume conjugate_flip(const ComplexVolume& volume) {
    const auto& d = volume.shape().dims;
    ComplexVolume out(volume.shape());
    // Index i sits at r = i - c; its mirror -r sits at (2c - i) mod n.
    auto mirror = [](std::size_t i, std::size_t n) { return (2 * (n / 2) + n - i) % n; };
    for (std::size_t i = 0; i < d[0]; ++i) {
        for (std::size_t j = 0; j < d[1]; ++j) {
            for (std::size_t k = 0; k < d[2]; ++k) {
                out(i, j, k) = std::conj(volume(mirror(i, d[0]), mirror(j, d[1]), mirror(k, d[2])));
            }
        }
    }
    return out;
}

ComplexVolume translate(const ComplexVolume& volume, const std::array<long long, 3>& shift) {
    std::array<std::size_t, 3> s{};
    for (std::size_t a = 0; a < 3; ++a) {
        const auto n = static_cast<long long>(volume.dim(a));
        s[a] = static_cast<std::size_t>(((shift[a] % n) + n) % n);
    }
    return fft::detail::roll(volume, s);
}

Comparison register_and_compare(const ComplexVolume& reconstruction, const ComplexVolume& truth,
                                double support_threshold) {
    require(reconstruction.shape() == truth.shape(), "reconstruction and truth must share one shape");
    require(support_threshold > 0.0 && support_threshold <= 1.0, "support threshold must lie in (0, 1]");

    const ComplexVolume truth_spectrum = amplitude_spectrum(truth);
    const ComplexVolume twin = conjugate_flip(reconstruction);
    const Peak direct = best_shift(truth_spectrum, reconstruction);
    const Peak flipped = best_shift(truth_spectrum, twin);

    Comparison out;
    out.conjugate_flipped = flipped.value > direct.value;
    out.shift = out.conjugate_flipped ? flipped.shift : direct.shift;
    ComplexVolume aligned = translate(out.conjugate_flipped ? twin : reconstruction, out.shift);

    const Volume<std::uint8_t> a = threshold_support(aligned, support_threshold);
    const Volume<std::uint8_t> b = threshold_support(truth, support_threshold);
    std::size_t na = 0;
    std::size_t nb = 0;
    std::size_t both = 0;
    complex cross{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        na += a[i];
        nb += b[i];
        if (a[i] && b[i]) {
            ++both;
            cross += truth[i] * std::conj(aligned[i]);
        }
    }
    out.support_overlap = na + nb == 0 ? 0.0 : 2.0 * static_cast<double>(both) / static_cast<double>(na + nb);
    out.phase_offset = std::abs(cross) > 0.0 ? std::arg(cross) : 0.0;

    if (both > 0) {
        const complex rotor = std::polar(1.0, out.phase_offset);
        double sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] && b[i]) {
                const double diff = std::arg(truth[i] * std::conj(aligned[i] * rotor));
                sum += diff * diff;
            }
        }
        out.phase_rmse = std::sqrt(sum / static_cast<double>(both));
    }
    return out;
}

} // namespace bcdi
