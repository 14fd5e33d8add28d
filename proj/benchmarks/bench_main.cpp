#include "wgarch/aggregation.hpp"
#include "wgarch/limit.hpp"
#include "wgarch/pricing.hpp"
#include "wgarch/rng.hpp"
#include "wgarch/simulate.hpp"

#include <benchmark/benchmark.h>

namespace {

const wgarch::ContinuousParams kBaseline{0.0045, 0.05, 0.1, 0.0};

void BM_PhiloxNormalPair(benchmark::State& state) {
    const wgarch::PathStream stream(42, 7);
    std::uint32_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(stream.normal_pair(i++));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxNormalPair);

void BM_KurtoticTransform(benchmark::State& state) {
    double xi = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wgarch::kurtotic_transform(xi, 7.0));
        xi = xi > 3.0 ? -3.0 : xi + 0.013;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_KurtoticTransform);

void BM_Aggregate(benchmark::State& state) {
    const wgarch::DiscreteGarchParams fine{wgarch::StepLength(1.0), 0.1, 0.1, 0.8};
    const wgarch::StepLength coarse(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(wgarch::aggregate(fine, 5.0, coarse));
}
BENCHMARK(BM_Aggregate)->Arg(2)->Arg(12);

void BM_Disaggregate(benchmark::State& state) {
    const wgarch::DiscreteGarchParams fine{wgarch::StepLength(1.0), 0.1, 0.1, 0.8};
    const auto coarse = wgarch::aggregate(fine, 5.0, wgarch::StepLength(5.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wgarch::disaggregate(coarse.params, coarse.kurtosis, wgarch::StepLength(1.0)));
    }
}
BENCHMARK(BM_Disaggregate);

void BM_ContinuousToDiscrete(benchmark::State& state) {
    const wgarch::StepLength delta(1.0 / 252.0);
    for (auto _ : state) benchmark::DoNotOptimize(wgarch::continuous_to_discrete(kBaseline, delta));
}
BENCHMARK(BM_ContinuousToDiscrete);

void BM_DiscreteToContinuous(benchmark::State& state) {
    const auto d = wgarch::continuous_to_discrete(kBaseline, wgarch::StepLength(1.0 / 252.0));
    for (auto _ : state) benchmark::DoNotOptimize(wgarch::discrete_to_continuous(d.params, d.kurtosis));
}
BENCHMARK(BM_DiscreteToContinuous);

void BM_SimulatePathSteps(benchmark::State& state) {
    wgarch::SimConfig cfg;
    cfg.n_paths = 1000;
    cfg.n_steps = 1000;
    cfg.seed = 1;
    cfg.scheme = state.range(0) == 0 ? wgarch::Scheme::DiffusionEuler : wgarch::Scheme::GarchConsistent;
    const auto kurtosis = wgarch::KurtosisSpec::constant(7.0);
    for (auto _ : state) benchmark::DoNotOptimize(wgarch::simulate(kBaseline, kurtosis, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.n_paths * cfg.n_steps));
    state.SetLabel(std::string(wgarch::scheme_name(cfg.scheme)));
}
BENCHMARK(BM_SimulatePathSteps)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ImpliedVol(benchmark::State& state) {
    const wgarch::OptionSpec o{100.0, 120.0, 1.0, 0.0, true};
    const double price = wgarch::bs_price(o, 0.27);
    for (auto _ : state) benchmark::DoNotOptimize(wgarch::implied_vol(o, price));
}
BENCHMARK(BM_ImpliedVol);

}  // namespace

BENCHMARK_MAIN();
