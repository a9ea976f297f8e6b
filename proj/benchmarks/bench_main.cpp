#include <benchmark/benchmark.h>

#include <cis/bounds.hpp>
#include <cis/exact.hpp>
#include <cis/monte_carlo.hpp>
#include <cis/random.hpp>
#include <cis/spectral.hpp>
#include <cis/words.hpp>

#include <vector>

using namespace cis;

static void BM_SampleUniform(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    RandomSource rng(1, 0);
    std::vector<Letter> buf;
    for (auto _ : state) {
        sample_uniform_into(m, n, rng, buf);
        benchmark::DoNotOptimize(buf.data());
    }
    state.SetItemsProcessed(state.iterations() * m * n);
}
BENCHMARK(BM_SampleUniform)->Args({2, 100})->Args({2, 10000})->Args({1, 100000});

static void BM_L1(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    RandomSource rng(2, 0);
    std::vector<Letter> buf;
    sample_uniform_into(2, n, rng, buf);
    for (auto _ : state) benchmark::DoNotOptimize(l1(buf));
    state.SetItemsProcessed(state.iterations() * 2 * n);
}
BENCHMARK(BM_L1)->Arg(100)->Arg(100000);

static void BM_LMax(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    RandomSource rng(3, 0);
    std::vector<Letter> buf;
    sample_uniform_into(2, n, rng, buf);
    for (auto _ : state) benchmark::DoNotOptimize(l_max(buf, n));
    state.SetItemsProcessed(state.iterations() * 2 * n);
}
BENCHMARK(BM_LMax)->Arg(100)->Arg(100000);

static void BM_CompleteProb(benchmark::State& state) {
    const auto engine = static_cast<CompletionEngine>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    const int n = static_cast<int>(state.range(2));
    for (auto _ : state) benchmark::DoNotOptimize(complete_prob(m, n, engine));
}
BENCHMARK(BM_CompleteProb)
    ->Args({static_cast<int>(CompletionEngine::HortonKurn), 3, 12})
    ->Args({static_cast<int>(CompletionEngine::GeneratingFunction), 3, 12})
    ->Args({static_cast<int>(CompletionEngine::HortonKurn), 5, 12})
    ->Args({static_cast<int>(CompletionEngine::GeneratingFunction), 5, 12});

static void BM_L1Series(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(l1_series(m, 1e-12).terms_used);
}
BENCHMARK(BM_L1Series)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_FindRoots(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto bits = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(find_roots(m, bits).roots.size());
}
BENCHMARK(BM_FindRoots)->Args({4, 128})->Args({12, 128})->Args({24, 192})->Unit(benchmark::kMillisecond);

static void BM_GreedyCode(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    const int delta = static_cast<int>(state.range(2));
    for (auto _ : state) benchmark::DoNotOptimize(greedy_code(m, n, delta).size());
}
BENCHMARK(BM_GreedyCode)->Args({2, 16, 2})->Args({3, 10, 3})->Args({4, 8, 4})->Unit(benchmark::kMillisecond);

static void BM_EstimateL1(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(estimate_l1(2, 50, 20000, 7).mean);
}
BENCHMARK(BM_EstimateL1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
