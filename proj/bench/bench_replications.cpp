#include "erasure_bandit/experiment.hpp"
#include "erasure_bandit/lowerbound.hpp"

#include <benchmark/benchmark.h>

using namespace erasure_bandit;

namespace {

ExperimentConfig bench_config()
{
    ExperimentConfig c;
    c.arms = 10;
    c.horizon = 50'000;
    c.epsilons = {0.9};
    c.algorithms = {Algorithm::SosSae, Algorithm::Lsae};
    c.replications = 32;
    return c;
}

void BM_Experiment(benchmark::State& state, Execution execution)
{
    const auto c = bench_config();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_experiment(c, execution));
    state.SetItemsProcessed(state.iterations() * std::int64_t(c.replications));
}

void BM_WorstCase(benchmark::State& state, Execution execution)
{
    const PolicyFactory sos = [](const PolicyContext& ctx) {
        return std::make_unique<BatchedElimination>(sos_sae_policy(ctx.arm_count, ctx.horizon));
    };
    for (auto _ : state)
        benchmark::DoNotOptimize(worst_case_regret(sos, 16, 0.9, 80, 2000, RngStream(1), execution));
    state.SetItemsProcessed(state.iterations() * 16 * 2000);
}

} // namespace

BENCHMARK_CAPTURE(BM_Experiment, serial, Execution::Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Experiment, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_WorstCase, serial, Execution::Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_WorstCase, parallel, Execution::Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
