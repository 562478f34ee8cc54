#include <benchmark/benchmark.h>

#include <cmath>

#include "bcdi/crystal.hpp"
#include "bcdi/phasing.hpp"
#include "bcdi/transforms.hpp"

namespace {

using namespace bcdi;

RetrievalState default_state() {
    const ComplexVolume crystal = build_crystal(CrystalSpec{});
    const RealVolume intensity = ground_truth_intensity(crystal).values;
    RealVolume modulus(intensity.shape());
    for (std::size_t i = 0; i < intensity.size(); ++i) {
        modulus[i] = std::sqrt(intensity[i]);
    }
    const Volume<std::uint8_t> support = initial_support(intensity);
    ComplexVolume start(intensity.shape());
    for (std::size_t i = 0; i < start.size(); ++i) {
        start[i] = support[i] ? complex(1.0, 0.0) : complex{};
    }
    return make_state(start, support, modulus);
}

void BM_HioStep(benchmark::State& state) {
    RetrievalState s = default_state();
    for (auto _ : state) {
        hio_step(s, 0.8);
    }
}
BENCHMARK(BM_HioStep)->Unit(benchmark::kMillisecond);

void BM_ErStep(benchmark::State& state) {
    RetrievalState s = default_state();
    for (auto _ : state) {
        er_step(s);
    }
}
BENCHMARK(BM_ErStep)->Unit(benchmark::kMillisecond);

void BM_Shrinkwrap(benchmark::State& state) {
    RetrievalState s = default_state();
    for (auto _ : state) {
        shrinkwrap(s, ShrinkwrapParams{});
    }
}
BENCHMARK(BM_Shrinkwrap)->Unit(benchmark::kMillisecond);

} // namespace
