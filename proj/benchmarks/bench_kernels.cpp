#include "disclab/exact_l2.hpp"
#include "disclab/lp_oracle.hpp"
#include "disclab/rng.hpp"
#include "disclab/sequences.hpp"

#include <benchmark/benchmark.h>

namespace {

using disclab::Kind;

void closed_form(benchmark::State& state, Kind kind) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto d = static_cast<std::size_t>(state.range(1));
    const auto points = disclab::random_point_set(n, d, disclab::default_seed);
    for (auto _ : state) {
        benchmark::DoNotOptimize(disclab::l2_discrepancy(points, kind));
    }
    state.SetComplexityN(state.range(0));
}

void BM_StarL2(benchmark::State& state) { closed_form(state, Kind::star); }
void BM_ExtremeL2(benchmark::State& state) { closed_form(state, Kind::extreme); }
void BM_PeriodicL2(benchmark::State& state) { closed_form(state, Kind::periodic); }
void BM_Diaphony(benchmark::State& state) { closed_form(state, Kind::diaphony); }

BENCHMARK(BM_StarL2)->ArgsProduct({{256, 1024, 4096}, {1, 2, 8}})->Complexity(benchmark::oNSquared);
BENCHMARK(BM_ExtremeL2)->ArgsProduct({{256, 1024, 4096}, {1, 2, 8}})->Complexity(benchmark::oNSquared);
BENCHMARK(BM_PeriodicL2)->ArgsProduct({{256, 1024, 4096}, {1, 2, 8}});
BENCHMARK(BM_Diaphony)->ArgsProduct({{256, 1024, 4096}, {1, 2, 8}});

void BM_PrefixScan(benchmark::State& state) {
    const auto points = disclab::prefix(disclab::SequenceGen::van_der_corput(2), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(disclab::prefix_l2_values(points, Kind::extreme));
    }
}
BENCHMARK(BM_PrefixScan)->Arg(1024)->Arg(8192);

void BM_ExactLp1d(benchmark::State& state) {
    const auto points = disclab::random_point_set(static_cast<std::size_t>(state.range(0)), 1, 7);
    const Kind kind = state.range(1) == 0 ? Kind::star : Kind::extreme;
    for (auto _ : state) {
        benchmark::DoNotOptimize(disclab::exact_lp_1d(points, kind, 3.0));
    }
}
BENCHMARK(BM_ExactLp1d)->ArgsProduct({{256, 2048}, {0, 1}});

void BM_MonteCarlo(benchmark::State& state) {
    const auto points = disclab::random_point_set(64, 2, 11);
    const disclab::McConfig config{static_cast<std::uint64_t>(state.range(0)), 5, Kind::extreme, 1.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(disclab::mc_lp(points, config).value);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(10'000)->Arg(100'000);

void BM_LinfEnum(benchmark::State& state) {
    const auto points = disclab::random_point_set(static_cast<std::size_t>(state.range(0)), 2, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(disclab::linf_exact_small(points, Kind::extreme));
    }
}
BENCHMARK(BM_LinfEnum)->Arg(16)->Arg(64);

} // namespace

BENCHMARK_MAIN();
