#include <gtest/gtest.h>

#include <random>

#include "bcdi/crystal.hpp"
#include "bcdi/error.hpp"
#include "bcdi/metrics.hpp"
#include "bcdi/sparsity.hpp"
#include "support/oracles.hpp"

namespace {

using namespace bcdi;

RealImage positive_image(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    RealImage img(n, n);
    for (double& v : img.values()) {
        v = u(rng);
    }
    return img;
}

TEST(Srtf, PerfectRecoveryIsOne) {
    const RealImage truth = positive_image(16, 51);
    const SrtfReport r = srtf_map(truth, truth);
    EXPECT_EQ(r.mean, 1.0);
    EXPECT_EQ(r.std, 0.0);
    EXPECT_EQ(r.n_valid, truth.size());
}

TEST(Srtf, FourTimesTheIntensityIsTwo) {
    const RealImage truth = positive_image(16, 52);
    RealImage rec = truth;
    for (double& v : rec.values()) {
        v *= 4.0;
    }
    const SrtfReport r = srtf_map(rec, truth);
    for (std::size_t i = 0; i < r.map.size(); ++i) {
        EXPECT_NEAR(r.map[i], 2.0, 1e-15);
    }
    EXPECT_NEAR(r.mean, 2.0, 1e-14);
    EXPECT_NEAR(r.std, 0.0, 1e-14);
}

TEST(Srtf, JointScalingLeavesStatisticsUnchanged) {
    const RealImage truth = positive_image(12, 53);
    const RealImage rec = positive_image(12, 54);
    RealImage truth10 = truth;
    RealImage rec10 = rec;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        truth10[i] *= 1e6;
        rec10[i] *= 1e6;
    }
    const SrtfReport a = srtf_map(rec, truth);
    const SrtfReport b = srtf_map(rec10, truth10);
    EXPECT_NEAR(a.mean, b.mean, 1e-12);
    EXPECT_NEAR(a.std, b.std, 1e-12);
    EXPECT_EQ(a.n_valid, b.n_valid);
}

TEST(Srtf, FloorMasksFaintPixels) {
    RealImage truth(2, 2, 1.0);
    truth(0, 1) = 1e-9;
    truth(1, 1) = 0.0;
    RealImage rec(2, 2, 1.0);
    const SrtfReport r = srtf_map(rec, truth, 1e-6);
    EXPECT_EQ(r.n_valid, 2u);
    EXPECT_EQ(r.valid(0, 1), 0);
    EXPECT_EQ(r.valid(1, 1), 0);
    EXPECT_EQ(r.mean, 1.0);
    // Floor zero still skips exact zeros.
    EXPECT_EQ(srtf_map(rec, truth, 0.0).n_valid, 3u);
}

TEST(Srtf, NegativeRecoveredValuesCountAsZero) {
    const RealImage truth(1, 2, 1.0);
    RealImage rec(1, 2, 1.0);
    rec(0, 1) = -3.0;
    const SrtfReport r = srtf_map(rec, truth);
    EXPECT_EQ(r.map(0, 1), 0.0);
    EXPECT_EQ(r.mean, 0.5);
}

TEST(Srtf, AllMaskedOrMismatchedThrows) {
    EXPECT_THROW(srtf_map(RealImage(3, 3), RealImage(3, 3)), InvalidInput);
    EXPECT_THROW(srtf_map(RealImage(3, 3, 1.0), RealImage(3, 4, 1.0)), InvalidInput);
}

TEST(SrtfSweep, BinningFactorOneIsExact) {
    CrystalSpec spec;
    spec.array_dims = {32, 32, 8};
    spec.box_dims = {6, 7, 3};
    spec.facet_cuts.clear();
    const RealVolume truth = ground_truth_intensity(build_crystal(spec)).values;
    SrtfSweepRequest req;
    req.pbfs = {1};
    req.positions = {1, 3};
    req.roi_fine = 30;
    const auto rows = srtf_sweep(truth, req, RecoveryConfig{});
    ASSERT_EQ(rows.size(), 4u);
    for (const auto& row : rows) {
        EXPECT_NEAR(row.mu, 1.0, 1e-12);
        EXPECT_NEAR(row.sigma, 0.0, 1e-12);
    }
    EXPECT_EQ(rows[0].slice_kind, SliceKind::OnBragg);
    EXPECT_EQ(rows[1].slice_kind, SliceKind::OffBragg);
    EXPECT_EQ(slice_index(SliceKind::OnBragg, 70), 35u);
    EXPECT_EQ(slice_index(SliceKind::OffBragg, 70), 69u);
    EXPECT_EQ(slice_index(SliceKind::OffBragg, 1), 0u);
}

TEST(Sparsity, ConstantImageHasOneCoefficient) {
    const SparsityEstimate e = estimate_sparsity(RealImage(16, 16, 2.5));
    EXPECT_EQ(e.k, 1u);
    EXPECT_FALSE(e.zero_slice);
}

TEST(Sparsity, ZeroSliceIsFlagged) {
    const SparsityEstimate e = estimate_sparsity(RealImage(8, 8));
    EXPECT_EQ(e.k, 0u);
    EXPECT_TRUE(e.zero_slice);
}

TEST(Sparsity, ScaleInvariant) {
    const RealImage img = positive_image(20, 55);
    RealImage scaled = img;
    for (double& v : scaled.values()) {
        v *= 10.0;
    }
    EXPECT_EQ(estimate_sparsity(img, 0.05).k, estimate_sparsity(scaled, 0.05).k);
}

} // namespace
