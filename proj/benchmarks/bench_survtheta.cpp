#include <benchmark/benchmark.h>

#include "survtheta/comparators.hpp"
#include "survtheta/csv_io.hpp"
#include "survtheta/estimators.hpp"
#include "survtheta/simulate.hpp"
#include "survtheta/theta_test.hpp"

using namespace survtheta;

namespace {

const Dataset& lung() {
    static const Dataset ds = load_dataset(SURVTHETA_LUNG_CSV);
    return ds;
}

void BM_KaplanMeier(benchmark::State& state) {
    RandomStream rng(1);
    const auto t = sample_exponential(0.25, static_cast<std::size_t>(state.range(0)), rng);
    std::vector<TimeEvent> obs;
    for (std::size_t i = 0; i < t.size(); ++i) obs.push_back({t[i], i % 4 != 0});
    for (auto _ : state) benchmark::DoNotOptimize(km_estimate(obs));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KaplanMeier)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_ThetaTestLung(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(theta_test(lung()));
}
BENCHMARK(BM_ThetaTestLung);

void BM_RankTestsLung(benchmark::State& state) {
    const auto m = lung().population(Population::first), f = lung().population(Population::second);
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_rank(m, f));
        benchmark::DoNotOptimize(gehan_wilcoxon(m, f));
    }
}
BENCHMARK(BM_RankTestsLung);

void BM_PowerReplicates(benchmark::State& state) {
    SimulationSpec spec;
    spec.sizes = {static_cast<std::size_t>(state.range(0))};
    spec.replicates = 20;
    spec.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(run_power_experiment(spec, MixtureSpec{}));
    state.SetItemsProcessed(state.iterations() * 20);
}
BENCHMARK(BM_PowerReplicates)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
