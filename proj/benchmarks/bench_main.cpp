#include <benchmark/benchmark.h>

#include "qs/eval.hpp"
#include "qs/optimize.hpp"
#include "qs/reconstruct.hpp"
#include "qs/sampling.hpp"
#include "qs/structure.hpp"

namespace {

qs::GrayImage texture(int n) {
    qs::GrayImage img(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            img.at(r, c) = static_cast<double>((r * 37 + c * 101 + r * c) % 256);
        }
    }
    return img;
}

void BM_detect(benchmark::State& state) {
    const int size = static_cast<int>(state.range(0));
    const qs::QuarterMask mask = qs::make_random(size, size, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qs::detect_all(mask));
    }
}
BENCHMARK(BM_detect)->Arg(32)->Arg(128)->Arg(256);

void BM_removal_step(benchmark::State& state) {
    const qs::QuarterMask mask = qs::make_random(32, 32, 1);
    const auto instances = qs::detect_all(mask);
    std::mt19937_64 rng(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qs::removal_step(mask, instances.front(), rng));
    }
}
BENCHMARK(BM_removal_step);

void BM_fsr_window(benchmark::State& state) {
    const int t = 32;
    std::vector<double> values(t * t);
    std::vector<double> weights(t * t);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < t * t; ++i) {
        values[i] = unit(rng) * 255.0;
        weights[i] = unit(rng) < 0.25 ? 1.0 : 0.0;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            qs::fsr_approximate_window(values, weights, t, 100, 0.5));
    }
}
BENCHMARK(BM_fsr_window);

void BM_reconstruct(benchmark::State& state) {
    const int n = 128;
    const qs::SampledImage sampled = qs::subsample(texture(n), qs::make_random(32, 32, 3));
    const auto alg = static_cast<qs::Algorithm>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(qs::reconstruct(sampled, alg));
    }
}
BENCHMARK(BM_reconstruct)
    ->Arg(static_cast<int>(qs::Algorithm::Nearest))
    ->Arg(static_cast<int>(qs::Algorithm::Linear))
    ->Arg(static_cast<int>(qs::Algorithm::Fsr));

void BM_psnr(benchmark::State& state) {
    const qs::GrayImage a = texture(512);
    qs::GrayImage b = a;
    b.at(0, 0) += 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qs::psnr(a, b));
    }
}
BENCHMARK(BM_psnr);

}  // namespace

BENCHMARK_MAIN();
