#include <gtest/gtest.h>

#include <random>

#include "bcdi/crystal.hpp"
#include "bcdi/error.hpp"
#include "bcdi/registration.hpp"

namespace {

using namespace bcdi;

ComplexVolume object() {
    CrystalSpec spec;
    spec.array_dims = {20, 18, 16};
    spec.box_dims = {6, 5, 4};
    spec.facet_cuts = {{{1.0, 1.0, 0.0}, 1.5}};
    spec.phase.model = PhaseModel::GaussianBump;
    spec.phase.amplitude = 1.2;
    spec.phase.length_scale = 2.0;
    return build_crystal(spec);
}

TEST(Registration, IdenticalVolumesMatchPerfectly) {
    const ComplexVolume v = object();
    const Comparison c = register_and_compare(v, v);
    EXPECT_EQ(c.support_overlap, 1.0);
    EXPECT_NEAR(c.phase_rmse, 0.0, 1e-12);
    EXPECT_FALSE(c.conjugate_flipped);
    EXPECT_EQ(c.shift, (std::array<long long, 3>{0, 0, 0}));
}

TEST(Registration, TranslateIsAPeriodicRoll) {
    ComplexVolume v(4, 4, 4);
    v(0, 0, 0) = 1.0;
    const ComplexVolume moved = translate(v, {1, -1, 5});
    EXPECT_EQ(moved(1, 3, 1), complex(1.0, 0.0));
    EXPECT_EQ(translate(moved, {-1, 1, -5}), v);
}

TEST(Registration, ConjugateFlipIsAnInvolution) {
    const ComplexVolume v = object();
    EXPECT_EQ(conjugate_flip(conjugate_flip(v)), v);
    ComplexVolume delta(5, 4, 4);
    delta(3, 2, 3) = complex(0.0, 1.0);
    // Center (2, 2, 2): offset (+1, 0, +1) mirrors to (1, 2, 1).
    EXPECT_EQ(conjugate_flip(delta)(1, 2, 1), complex(0.0, -1.0));
}

TEST(Registration, UndoesTwinShiftAndGlobalPhase) {
    const ComplexVolume truth = object();
    ComplexVolume recon = translate(conjugate_flip(truth), {3, -2, 1});
    for (auto& x : recon.values()) {
        x *= std::polar(1.0, 0.7);
    }
    const Comparison c = register_and_compare(recon, truth);
    EXPECT_TRUE(c.conjugate_flipped);
    EXPECT_EQ(c.support_overlap, 1.0);
    EXPECT_LT(c.phase_rmse, 1e-10);
    // Reconstruction carries +0.7 before conjugation, so -0.7 after; truth needs +0.7 back.
    EXPECT_NEAR(c.phase_offset, 0.7, 1e-10);
}

TEST(Registration, PlainShiftAndPhase) {
    const ComplexVolume truth = object();
    ComplexVolume recon = translate(truth, {-4, 5, 2});
    for (auto& x : recon.values()) {
        x *= std::polar(1.0, -1.1);
    }
    const Comparison c = register_and_compare(recon, truth);
    EXPECT_FALSE(c.conjugate_flipped);
    EXPECT_EQ(c.shift, (std::array<long long, 3>{4, -5, -2}));
    EXPECT_NEAR(c.phase_offset, 1.1, 1e-10);
    EXPECT_LT(c.phase_rmse, 1e-10);
}

TEST(Registration, DisjointSupportsScoreBelowOne) {
    const ComplexVolume truth = object();
    ComplexVolume smaller = truth;
    for (std::size_t i = 0; i < smaller.size(); i += 2) {
        smaller[i] = complex{};
    }
    const Comparison c = register_and_compare(smaller, truth);
    EXPECT_LT(c.support_overlap, 1.0);
    EXPECT_GT(c.support_overlap, 0.5);
}

TEST(Registration, InvalidArgumentsThrow) {
    EXPECT_THROW(register_and_compare(ComplexVolume(4, 4, 4), ComplexVolume(4, 4, 5)), InvalidInput);
    EXPECT_THROW(register_and_compare(object(), object(), 0.0), InvalidInput);
}

} // namespace
