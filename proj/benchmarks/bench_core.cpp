#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "vegasplus/vegasplus.hpp"

namespace {

using namespace vegasplus;

void BM_Philox2x64(benchmark::State& state) {
    std::array<std::uint64_t, 2> counter{0, 7};
    for (auto _ : state) {
        auto out = philox2x64(counter, 0x1234);
        benchmark::DoNotOptimize(out);
        ++counter[0];
    }
    state.SetItemsProcessed(state.iterations() * 2);
}
BENCHMARK(BM_Philox2x64);

void BM_UniformStream(benchmark::State& state) {
    RngStream rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_uniform());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_UniformStream);

// One full fill of roos_arnold at a given budget, single worker.
void BM_Fill(benchmark::State& state) {
    const auto n_eval = static_cast<std::uint64_t>(state.range(0));
    const std::size_t dims = static_cast<std::size_t>(state.range(1));
    const auto spec = lookup("roos_arnold", dims);
    const auto map = VegasMap::uniform(dims, 1024, spec.domain);
    const StratGrid grid(dims, compute_n_strat(n_eval, dims), n_eval);
    const auto plan = RunPlan::build(grid.evals_per_cube());
    const Integrand f = spec.integrand();
    ParallelExecutor executor(1);
    for (auto _ : state) {
        executor.prepare(dims, map.n_intervals(), grid.n_cubes());
        benchmark::DoNotOptimize(&executor.fill(plan, map, grid, StreamLayout{1, 1 << 20, 0}, f));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(plan.total_runs()));
}
BENCHMARK(BM_Fill)->Args({100'000, 10})->Args({1'000'000, 10})->Args({100'000, 4})->Unit(benchmark::kMillisecond);

std::vector<double> random_spread(std::size_t n) {
    std::mt19937_64 gen(3);
    std::exponential_distribution<double> dist(1.0);
    std::vector<double> d(n);
    for (auto& v : d) v = dist(gen);
    return d;
}

void BM_Reallocate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const double beta = static_cast<double>(state.range(1)) / 100.0;
    const auto spread = random_spread(n);
    std::vector<std::uint64_t> n_h;
    std::vector<double> scratch;
    for (auto _ : state) {
        update_evals_per_cube(spread, beta, 10 * n, n_h, scratch);
        benchmark::DoNotOptimize(n_h.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Reallocate)->Args({1 << 20, 75})->Args({1 << 20, 30})->Unit(benchmark::kMicrosecond);

void BM_ComputeResults(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    CubeAccumulators acc(n);
    RngStream rng(5, 0);
    for (std::uint64_t h = 0; h < n; ++h) {
        for (int k = 0; k < 3; ++k) acc.accumulate(h, rng.next_uniform());
    }
    IterationEstimate out;
    for (auto _ : state) {
        compute_results(acc, 1.0 / static_cast<double>(n), out);
        benchmark::DoNotOptimize(out.integral);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_ComputeResults)->Arg(1 << 20)->Unit(benchmark::kMicrosecond);

void BM_MapUpdate(benchmark::State& state) {
    const std::size_t dims = 10;
    const auto n_intervals = static_cast<std::size_t>(state.range(0));
    const std::vector<Bounds> domain(dims, Bounds{0.0, 1.0});
    const auto map = VegasMap::uniform(dims, n_intervals, domain);
    MapWeights weights(dims, n_intervals);
    RngStream rng(9, 0);
    std::vector<std::uint32_t> idx(dims);
    for (int s = 0; s < 200'000; ++s) {
        for (auto& i : idx) i = static_cast<std::uint32_t>(rng.next_uniform() * static_cast<double>(n_intervals));
        weights.accumulate(idx, rng.next_uniform());
    }
    for (auto _ : state) {
        auto next = update_grid(map, smooth_and_damp(weights, 0.5));
        benchmark::DoNotOptimize(next);
    }
}
BENCHMARK(BM_MapUpdate)->Arg(50)->Arg(1024)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
