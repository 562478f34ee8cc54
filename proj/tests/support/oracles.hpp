#pragma once

// Slow, obviously-correct reference implementations used as test oracles.
// Nothing here shares code with the library beyond the array containers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "bcdi/array.hpp"
#include "bcdi/detector.hpp"

namespace oracle {

using bcdi::complex;
using bcdi::ComplexImage;
using bcdi::ComplexVolume;
using bcdi::RealImage;

inline long centered(std::size_t i, std::size_t n) { return static_cast<long>(i) - static_cast<long>(n / 2); }

/// Direct triple sum with origin at floor(n/2) in both spaces.
inline ComplexVolume dft3_centered(const ComplexVolume& in, int sign = -1) {
    const auto& d = in.shape().dims;
    ComplexVolume out(in.shape());
    const double tau = 2.0 * std::numbers::pi;
    for (std::size_t u = 0; u < d[0]; ++u) {
        for (std::size_t v = 0; v < d[1]; ++v) {
            for (std::size_t w = 0; w < d[2]; ++w) {
                complex sum{};
                for (std::size_t i = 0; i < d[0]; ++i) {
                    for (std::size_t j = 0; j < d[1]; ++j) {
                        for (std::size_t k = 0; k < d[2]; ++k) {
                            const double phase =
                                sign * tau *
                                (static_cast<double>(centered(u, d[0]) * centered(i, d[0])) / static_cast<double>(d[0]) +
                                 static_cast<double>(centered(v, d[1]) * centered(j, d[1])) / static_cast<double>(d[1]) +
                                 static_cast<double>(centered(w, d[2]) * centered(k, d[2])) / static_cast<double>(d[2]));
                            sum += in(i, j, k) * std::polar(1.0, phase);
                        }
                    }
                }
                out(u, v, w) = sum;
            }
        }
    }
    return out;
}

/// Eq.-(1)-style DCT: B(m, n) = sum_ij A(i, j) cos[(i + 1/2) m pi / N] cos[(j + 1/2) n pi / N].
inline RealImage dct_raw(const RealImage& a) {
    const std::size_t n = a.rows();
    RealImage out(n, n);
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t q = 0; q < n; ++q) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    sum += a(i, j) * std::cos((static_cast<double>(i) + 0.5) * static_cast<double>(m) * std::numbers::pi / static_cast<double>(n)) *
                           std::cos((static_cast<double>(j) + 0.5) * static_cast<double>(q) * std::numbers::pi / static_cast<double>(n));
                }
            }
            out(m, q) = sum;
        }
    }
    return out;
}

/// Orthonormal scaling of dct_raw: factor sqrt(1/N) for index 0, sqrt(2/N) otherwise, per axis.
inline RealImage dct_orthonormal(const RealImage& a) {
    const std::size_t n = a.rows();
    RealImage out = dct_raw(a);
    auto s = [n](std::size_t k) { return std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n)); };
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t q = 0; q < n; ++q) {
            out(m, q) *= s(m) * s(q);
        }
    }
    return out;
}

/// Circular autocorrelation P(r) = sum_x f(x + r) conj(f(x)), centered output.
/// Summed directly over every pair of nonzero voxels, so the cost scales with
/// the square of the support size rather than of the array.
inline ComplexVolume autocorrelation(const ComplexVolume& f) {
    const auto& d = f.shape().dims;
    struct Voxel {
        std::array<long, 3> at;
        complex value;
    };
    std::vector<Voxel> voxels;
    for (std::size_t i = 0; i < d[0]; ++i) {
        for (std::size_t j = 0; j < d[1]; ++j) {
            for (std::size_t k = 0; k < d[2]; ++k) {
                if (f(i, j, k) != complex{}) {
                    voxels.push_back({{static_cast<long>(i), static_cast<long>(j), static_cast<long>(k)}, f(i, j, k)});
                }
            }
        }
    }
    // Offset r lands at centered index r + n/2, wrapped.
    const auto place = [&](long r, std::size_t axis) {
        const long n = static_cast<long>(d[axis]);
        return static_cast<std::size_t>((((r + n / 2) % n) + n) % n);
    };
    ComplexVolume out(f.shape());
    for (const Voxel& p : voxels) {
        for (const Voxel& q : voxels) {
            out(place(p.at[0] - q.at[0], 0), place(p.at[1] - q.at[1], 1), place(p.at[2] - q.at[2], 2)) +=
                p.value * std::conj(q.value);
        }
    }
    return out;
}

/// Number of distinct m x m footprints (as fine-pixel sets) fully inside an
/// (m N) x (m N) grid over every offset in `offsets`.
inline std::uint64_t brute_force_unique_footprints(std::size_t n_coarse, std::size_t m,
                                                   const std::vector<bcdi::Offset>& offsets) {
    const long side = static_cast<long>(n_coarse * m);
    std::set<std::vector<long>> seen;
    for (const auto& o : offsets) {
        // Every anchor congruent to -offset modulo m, scanning the whole grid.
        for (long r0 = -static_cast<long>(m); r0 < side; ++r0) {
            for (long c0 = -static_cast<long>(m); c0 < side; ++c0) {
                const long mm = static_cast<long>(m);
                if ((((r0 + o.row) % mm) + mm) % mm != 0 || (((c0 + o.col) % mm) + mm) % mm != 0) {
                    continue;
                }
                if (r0 < 0 || c0 < 0 || r0 + mm > side || c0 + mm > side) {
                    continue;
                }
                std::vector<long> pixels;
                for (long r = r0; r < r0 + mm; ++r) {
                    for (long c = c0; c < c0 + mm; ++c) {
                        pixels.push_back(r * side + c);
                    }
                }
                seen.insert(std::move(pixels));
            }
        }
    }
    return seen.size();
}

/// Raw diagonal walk: zero, (d, d) for d = 1..m-1, (d, -d) for d = 1..m-1.
inline std::vector<bcdi::Offset> diagonal_walk(std::size_t m) {
    std::vector<bcdi::Offset> out{{0, 0}};
    for (std::size_t d = 1; d < m; ++d) {
        out.push_back({static_cast<int>(d), static_cast<int>(d)});
    }
    for (std::size_t d = 1; d < m; ++d) {
        out.push_back({static_cast<int>(d), -static_cast<int>(d)});
    }
    return out;
}

/// Gaussian elimination with partial pivoting on a dense row-major system.
inline std::vector<double> solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) {
                pivot = r;
            }
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::swap(a[col * n + c], a[pivot * n + c]);
        }
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) {
                a[r * n + c] -= f * a[col * n + c];
            }
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) {
            s -= a[i * n + c] * x[c];
        }
        x[i] = s / a[i * n + i];
    }
    return x;
}

/// Random orthogonal n x n matrix from modified Gram-Schmidt on Gaussian columns.
inline std::vector<double> random_orthogonal(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<double> q(n * n);
    for (double& v : q) {
        v = g(rng);
    }
    // Orthonormalize columns.
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                dot += q[i * n + j] * q[i * n + k];
            }
            for (std::size_t i = 0; i < n; ++i) {
                q[i * n + j] -= dot * q[i * n + k];
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            norm += q[i * n + j] * q[i * n + j];
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) {
            q[i * n + j] /= norm;
        }
    }
    return q;
}

inline RealImage random_image(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    RealImage img(rows, cols);
    for (double& v : img.values()) {
        v = u(rng);
    }
    return img;
}

inline ComplexVolume random_volume(std::size_t a, std::size_t b, std::size_t c, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexVolume v(a, b, c);
    for (auto& x : v.values()) {
        x = complex{u(rng), u(rng)};
    }
    return v;
}

} // namespace oracle
