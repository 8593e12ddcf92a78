#include "wsie/quadrature.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace wsie;

static void BM_GaussLegendre(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(gauss_legendre(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GaussLegendre)->Arg(10)->Arg(64);

static void BM_GradedLog(benchmark::State& state) {
    const GradedQuadSpec spec{10, static_cast<int>(state.range(0)), 0.01};
    for (auto _ : state) benchmark::DoNotOptimize(graded_cgl_1d([](double y) { return std::log(y); }, spec));
}
BENCHMARK(BM_GradedLog)->Arg(15)->Arg(60);

static void BM_Rule2D(benchmark::State& state) {
    const auto square = Piece::box({{0.0, 1.0}, {0.0, 1.0}});
    const GradedQuadSpec spec{static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 0.01};
    for (auto _ : state) benchmark::DoNotOptimize(singular_2d_rule({0.4, 0.6}, square, spec));
}
BENCHMARK(BM_Rule2D)->Args({6, 8})->Args({10, 15});

static void BM_Rule3D(benchmark::State& state) {
    const auto cube = Piece::box({{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}});
    const GradedQuadSpec spec{static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 0.01};
    for (auto _ : state) benchmark::DoNotOptimize(singular_tensor_rule({0.4, 0.6, 0.2}, cube, spec));
}
BENCHMARK(BM_Rule3D)->Args({4, 4})->Args({6, 8});
