#include <gtest/gtest.h>

#include <random>

#include "bcdi/crystal.hpp"
#include "bcdi/error.hpp"
#include "bcdi/fft.hpp"
#include "bcdi/transforms.hpp"
#include "support/oracles.hpp"

namespace {

using namespace bcdi;

double max_diff(const ComplexVolume& a, const ComplexVolume& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

TEST(Fft3Centered, MatchesDirectSumOnOddAndEvenShapes) {
    std::mt19937_64 rng(11);
    for (auto dims : {std::array<std::size_t, 3>{4, 5, 6}, std::array<std::size_t, 3>{3, 3, 2},
                      std::array<std::size_t, 3>{1, 7, 4}}) {
        const ComplexVolume v = oracle::random_volume(dims[0], dims[1], dims[2], rng);
        EXPECT_LT(max_diff(fft3_centered(v), oracle::dft3_centered(v)), 1e-10);
    }
}

TEST(Fft3Centered, InverseCarriesOneOverN) {
    std::mt19937_64 rng(12);
    const ComplexVolume v = oracle::random_volume(6, 4, 5, rng);
    ComplexVolume expected = oracle::dft3_centered(v, +1);
    for (auto& x : expected.values()) {
        x /= static_cast<double>(v.size());
    }
    EXPECT_LT(max_diff(ifft3_centered(v), expected), 1e-12);
    EXPECT_LT(max_diff(ifft3_centered(fft3_centered(v)), v), 1e-12);
}

TEST(Fft3Centered, DeltaAtCenterGivesFlatSpectrum) {
    ComplexVolume v(8, 8, 8);
    v(4, 4, 4) = 1.0;
    const ComplexVolume f = fft3_centered(v);
    for (const auto& x : f.values()) {
        EXPECT_NEAR(x.real(), 1.0, 1e-14);
        EXPECT_NEAR(x.imag(), 0.0, 1e-14);
    }
}

TEST(FftShift, RoundTripsOnOddLengths) {
    Volume<int> v(3, 4, 5);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = static_cast<int>(i);
    }
    EXPECT_EQ(fft::ifftshift(fft::fftshift(v)), v);
    EXPECT_EQ(fft::fftshift(v)(1, 2, 2), v(0, 0, 0));
}

TEST(Dct2, RawMatchesDirectDoubleSum) {
    std::mt19937_64 rng(13);
    for (std::size_t n = 1; n <= 16; ++n) {
        const RealImage img = oracle::random_image(n, n, rng);
        const Spectrum2D s = dct2(img, DctNormalization::Raw);
        const RealImage ref = oracle::dct_raw(img);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            ASSERT_NEAR(s.coeffs[i], ref[i], 1e-10) << "n=" << n;
        }
    }
}

TEST(Dct2, OrthonormalMatchesScaledDirectSum) {
    std::mt19937_64 rng(14);
    for (std::size_t n : {1, 2, 5, 8, 16}) {
        const RealImage img = oracle::random_image(n, n, rng);
        const Spectrum2D s = dct2(img, DctNormalization::Orthonormal);
        const RealImage ref = oracle::dct_orthonormal(img);
        for (std::size_t i = 0; i < ref.size(); ++i) {
            ASSERT_NEAR(s.coeffs[i], ref[i], 1e-10) << "n=" << n;
        }
    }
}

TEST(Dct2, RoundTripAt120) {
    std::mt19937_64 rng(15);
    const RealImage img = oracle::random_image(120, 120, rng);
    for (auto norm : {DctNormalization::Raw, DctNormalization::Orthonormal}) {
        const RealImage back = idct2(dct2(img, norm));
        for (std::size_t i = 0; i < img.size(); ++i) {
            ASSERT_NEAR(back[i], img[i], 1e-10);
        }
    }
}

TEST(Dct2, OrthonormalPreservesEnergy) {
    std::mt19937_64 rng(16);
    const RealImage img = oracle::random_image(24, 24, rng);
    const Spectrum2D s = dct2(img, DctNormalization::Orthonormal);
    double e0 = 0.0;
    double e1 = 0.0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        e0 += img[i] * img[i];
        e1 += s.coeffs[i] * s.coeffs[i];
    }
    EXPECT_NEAR(e0, e1, 1e-10 * e0);
}

TEST(Dct2, ConstantImageHasOnlyDcTerm) {
    const RealImage img(8, 8, 3.0);
    const Spectrum2D s = dct2(img, DctNormalization::Orthonormal);
    EXPECT_NEAR(s.coeffs(0, 0), 3.0 * 8.0, 1e-12);
    for (std::size_t i = 1; i < s.coeffs.size(); ++i) {
        EXPECT_NEAR(s.coeffs[i], 0.0, 1e-12);
    }
}

TEST(Dct2, RejectsNonSquareAndUntaggedSpectra) {
    EXPECT_THROW(dct2(RealImage(4, 5), DctNormalization::Raw), InvalidInput);
    Spectrum2D untagged{RealImage(4, 4), std::nullopt};
    EXPECT_THROW(idct2(untagged), InvalidInput);
}

TEST(ProjectionSlice, HoldsForEverySliceOfRandomVolumes) {
    std::mt19937_64 rng(17);
    const ComplexVolume v = oracle::random_volume(6, 5, 7, rng);
    for (std::size_t axis = 0; axis < 3; ++axis) {
        for (std::size_t s = 0; s < v.dim(axis); ++s) {
            EXPECT_LT(verify_projection_slice(v, axis, s).relative, 1e-10) << "axis " << axis << " slice " << s;
        }
    }
}

TEST(ProjectionSlice, CentralSliceIsThePlainProjection) {
    std::mt19937_64 rng(18);
    const ComplexVolume v = oracle::random_volume(4, 4, 6, rng);
    const ComplexImage plain = project(v, 2);
    const ComplexImage modulated = project_modulated(v, 2, 3);
    for (std::size_t i = 0; i < plain.size(); ++i) {
        EXPECT_LT(std::abs(plain[i] - modulated[i]), 1e-14);
    }
}

TEST(ProjectionSlice, OutOfRangeSliceThrows) {
    EXPECT_THROW(verify_projection_slice(ComplexVolume(4, 4, 4), 2, 4), InvalidInput);
}

TEST(ProjectionSlice, HoldsOnAPattersonFunction) {
    CrystalSpec spec;
    spec.array_dims = {16, 16, 12};
    spec.box_dims = {5, 6, 4};
    spec.facet_cuts.clear();
    const IntensityVolume intensity = ground_truth_intensity(build_crystal(spec));
    ComplexVolume patterson(intensity.values.shape());
    for (std::size_t i = 0; i < patterson.size(); ++i) {
        patterson[i] = intensity.values[i];
    }
    patterson = ifft3_centered(patterson);
    for (std::size_t s = 0; s < 12; ++s) {
        EXPECT_LT(verify_projection_slice(patterson, 2, s).relative, 1e-10);
    }
}

TEST(Patterson, InverseIntensityIsTheDirectAutocorrelation) {
    CrystalSpec spec;
    spec.array_dims = {10, 12, 8};
    spec.box_dims = {4, 5, 3};
    spec.facet_cuts = {{{1.0, 1.0, 0.0}, 2.0}};
    spec.phase.model = PhaseModel::GaussianBump;
    const ComplexVolume crystal = build_crystal(spec);
    const IntensityVolume intensity = ground_truth_intensity(crystal);
    ComplexVolume patterson(crystal.shape());
    for (std::size_t i = 0; i < patterson.size(); ++i) {
        patterson[i] = intensity.values[i];
    }
    patterson = ifft3_centered(patterson);
    const ComplexVolume ref = oracle::autocorrelation(crystal);
    EXPECT_LT(max_diff(patterson, ref), 1e-10);

    // Footprint spans at most 2s - 1 voxels per axis.
    const NyquistReport nyq = patterson_nyquist_check(crystal);
    for (std::size_t axis = 0; axis < 3; ++axis) {
        std::size_t lo = crystal.dim(axis);
        std::size_t hi = 0;
        for (std::size_t i = 0; i < ref.dim(0); ++i) {
            for (std::size_t j = 0; j < ref.dim(1); ++j) {
                for (std::size_t k = 0; k < ref.dim(2); ++k) {
                    if (std::abs(ref(i, j, k)) > 1e-9) {
                        const std::array<std::size_t, 3> idx{i, j, k};
                        lo = std::min(lo, idx[axis]);
                        hi = std::max(hi, idx[axis]);
                    }
                }
            }
        }
        EXPECT_LE(hi - lo + 1, 2 * nyq.support_span[axis] - 1);
    }
}

} // namespace
