#include <benchmark/benchmark.h>

#include <random>

#include "bcdi/crystal.hpp"
#include "bcdi/transforms.hpp"

namespace {

using namespace bcdi;

void BM_Fft3Centered(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto slices = static_cast<std::size_t>(state.range(1));
    ComplexVolume v(n, n, slices);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (auto& x : v.values()) {
        x = complex(g(rng), g(rng));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fft3_centered(v));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size()));
}
BENCHMARK(BM_Fft3Centered)->Args({32, 16})->Args({64, 35})->Args({128, 70})->Unit(benchmark::kMillisecond);

void BM_Dct2Orthonormal(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    RealImage img(n, n);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u;
    for (double& x : img.values()) {
        x = u(rng);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(dct2(img, DctNormalization::Orthonormal));
    }
}
BENCHMARK(BM_Dct2Orthonormal)->Arg(16)->Arg(60)->Arg(120)->Unit(benchmark::kMicrosecond);

void BM_Dct2InPlaceRoundTrip(benchmark::State& state) {
    const std::size_t n = 120;
    std::vector<double> data(n * n, 0.5);
    for (auto _ : state) {
        dct2_orthonormal_inplace(data, n);
        idct2_orthonormal_inplace(data, n);
        benchmark::DoNotOptimize(data.data());
    }
}
BENCHMARK(BM_Dct2InPlaceRoundTrip)->Unit(benchmark::kMicrosecond);

void BM_GroundTruthIntensity(benchmark::State& state) {
    const ComplexVolume crystal = build_crystal(CrystalSpec{});
    for (auto _ : state) {
        benchmark::DoNotOptimize(ground_truth_intensity(crystal));
    }
}
BENCHMARK(BM_GroundTruthIntensity)->Unit(benchmark::kMillisecond);

} // namespace
