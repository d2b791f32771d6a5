#include <benchmark/benchmark.h>

#include "towbandit/analysis.hpp"
#include "towbandit/harness.hpp"
#include "towbandit/tow.hpp"

using namespace towbandit;

namespace {

void BM_Qfunc(benchmark::State& state) {
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(analysis::qfunc(x));
        x += 1e-6;
    }
}
BENCHMARK(BM_Qfunc);

void BM_TowSelectUpdate(benchmark::State& state) {
    const auto machines = static_cast<std::size_t>(state.range(0));
    tow::FluctuationConfig fluct;
    fluct.kind = tow::FluctKind::UniformNoise;
    fluct.amplitude = 0.5;
    tow::TowState s(machines, tow::OmegaMode::fixed(1.0), fluct);
    PlayHistory h(machines);
    Rng rng(1);
    for (auto _ : state) {
        std::size_t k = tow::select(s, rng);
        bool reward = rng.bernoulli(0.5);
        h.record(k, reward);
        tow::update(s, h, k, reward);
    }
}
BENCHMARK(BM_TowSelectUpdate)->Arg(2)->Arg(8)->Arg(32);

harness::RunConfig trial_config(const char* policy) {
    harness::RunConfig config;
    config.probs = {0.6, 0.4};
    config.policy = harness::parse_policy(policy);
    if (config.policy.kind == harness::PolicySpec::Kind::Tow) {
        config.policy.fluct.kind = tow::FluctKind::UniformNoise;
        config.policy.fluct.amplitude = 0.5;
    }
    config.horizon = 1000;
    config.trials = 1;
    config.base_seed = 42;
    return config;
}

void BM_RunTrial(benchmark::State& state, const char* policy) {
    harness::RunConfig config = trial_config(policy);
    std::uint64_t index = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(harness::run_trial(config, index++));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(config.horizon));
}
BENCHMARK_CAPTURE(BM_RunTrial, tow, "tow");
BENCHMARK_CAPTURE(BM_RunTrial, cheater, "cheater");
BENCHMARK_CAPTURE(BM_RunTrial, ucb1, "ucb1");
BENCHMARK_CAPTURE(BM_RunTrial, egreedy, "egreedy:0.1");

}  // namespace

BENCHMARK_MAIN();
