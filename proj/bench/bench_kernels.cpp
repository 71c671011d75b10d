// Serial reference loops against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "nnm/builtins.hpp"
#include "nnm/fixedpoint.hpp"
#include "nnm/metric.hpp"
#include "nnm/reference.hpp"
#include "nnm/topology.hpp"

namespace {

using namespace nnm;

std::vector<double> sample(std::size_t n) { return builtin::uniform_sample(n, 42, -10.0, 10.0); }

void BM_AlphaAxiomsSerial(benchmark::State& state) {
    const auto space = push_forward_metric(exp_generator(), builtin::euclidean());
    const auto points = sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::check_alpha_axioms(space, std::span<const double>(points)));
    state.SetComplexityN(state.range(0));
}

void BM_AlphaAxiomsParallel(benchmark::State& state) {
    const auto space = push_forward_metric(exp_generator(), builtin::euclidean());
    const auto points = sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(check_alpha_axioms(space, std::span<const double>(points)));
    state.SetComplexityN(state.range(0));
    state.counters["threads"] = kernel_threads();
}

void BM_MultiplicativeAxiomsSerial(benchmark::State& state) {
    const auto space = builtin::max_ratio();
    const auto points = builtin::log_uniform_sample(static_cast<std::size_t>(state.range(0)), 7, 0.1, 100.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::check_multiplicative_axioms(space, std::span<const double>(points)));
}

void BM_MultiplicativeAxiomsParallel(benchmark::State& state) {
    const auto space = builtin::max_ratio();
    const auto points = builtin::log_uniform_sample(static_cast<std::size_t>(state.range(0)), 7, 0.1, 100.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(check_multiplicative_axioms(space, std::span<const double>(points)));
    state.counters["threads"] = kernel_threads();
}

ClassicalContraction<double> affine_contraction() {
    const auto map = builtin::affine_map(0.5, 1.0);
    return {map.map, builtin::euclidean(), 0.5};
}

void BM_ContractionSerial(benchmark::State& state) {
    const auto spec = affine_contraction();
    const auto g = cube_generator();
    const auto points = sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::verify_contraction(spec, std::span<const double>(points), g));
}

void BM_ContractionParallel(benchmark::State& state) {
    const auto spec = affine_contraction();
    const auto g = cube_generator();
    const auto points = sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_contraction(spec, std::span<const double>(points), g));
    state.counters["threads"] = kernel_threads();
}

} // namespace

BENCHMARK(BM_AlphaAxiomsSerial)->RangeMultiplier(2)->Range(16, 128)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_AlphaAxiomsParallel)->RangeMultiplier(2)->Range(16, 128)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_MultiplicativeAxiomsSerial)->RangeMultiplier(2)->Range(16, 128);
BENCHMARK(BM_MultiplicativeAxiomsParallel)->RangeMultiplier(2)->Range(16, 128);
BENCHMARK(BM_ContractionSerial)->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_ContractionParallel)->RangeMultiplier(4)->Range(64, 1024);

BENCHMARK_MAIN();
