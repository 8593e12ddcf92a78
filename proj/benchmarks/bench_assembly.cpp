#include "wsie/problems.hpp"
#include "wsie/solver.hpp"

#include <benchmark/benchmark.h>

using namespace wsie;

static void BM_AssembleEx1(benchmark::State& state) {
    const auto p = make_problem("ex1-log-interval");
    const auto nodes = generate_nodes(p.domain, static_cast<std::size_t>(state.range(0)), NodeStrategy::Equispaced);
    const HybridKernel k(parse_kernel_spec("GA+CU"), 0.43, 3.96e-10);
    for (auto _ : state) benchmark::DoNotOptimize(assemble(p, nodes, k, {}));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_AssembleEx1)->RangeMultiplier(2)->Range(10, 160)->Complexity(benchmark::oNSquared);

static void BM_AssembleEx3(benchmark::State& state) {
    const auto p = make_problem("ex3-blade-2d");
    const auto nodes = generate_nodes(p.domain, static_cast<std::size_t>(state.range(0)), NodeStrategy::Halton);
    const HybridKernel k(parse_kernel_spec("GA+CU"), 0.21, 7.28e-8);
    for (auto _ : state) benchmark::DoNotOptimize(assemble(p, nodes, k, {6, 8, 0.01}));
}
BENCHMARK(BM_AssembleEx3)->Arg(21)->Unit(benchmark::kMillisecond);

static void BM_PreparedReassemble(benchmark::State& state) {
    const auto p = make_problem("ex1-log-interval");
    const auto nodes = generate_nodes(p.domain, 10, NodeStrategy::Equispaced);
    const PreparedAssembly prep(p, nodes, {}, {});
    double eps = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(prep.assemble(HybridKernel(parse_kernel_spec("GA+CU"), eps, 1e-9)));
        eps = eps < 1.0 ? eps + 0.01 : 0.1;
    }
}
BENCHMARK(BM_PreparedReassemble);

static void BM_SolveDense(benchmark::State& state) {
    const auto p = make_problem("ex1-log-interval");
    const auto nodes = generate_nodes(p.domain, static_cast<std::size_t>(state.range(0)), NodeStrategy::Equispaced);
    const auto sys = assemble(p, nodes, HybridKernel(parse_kernel_spec("MQ+CU"), 1.0, 1e-6), {});
    for (auto _ : state) benchmark::DoNotOptimize(solve_dense(sys));
}
BENCHMARK(BM_SolveDense)->Arg(10)->Arg(80);
