#include <benchmark/benchmark.h>

#include "pcstore/des_engine.hpp"
#include "pcstore/markov_oracle.hpp"
#include "pcstore/queueing_model.hpp"

namespace {

void BM_ClosedForm(benchmark::State& state) {
    const pcstore::QueueParameters p{25.0, 32.0};
    for (auto _ : state) benchmark::DoNotOptimize(pcstore::metrics(p));
}
BENCHMARK(BM_ClosedForm);

void BM_OracleSolve(benchmark::State& state) {
    const pcstore::TruncatedChain chain{static_cast<std::size_t>(state.range(0)), 30.0, 32.0};
    for (auto _ : state) benchmark::DoNotOptimize(pcstore::solve_steady_state(chain));
}
BENCHMARK(BM_OracleSolve)->Arg(400)->Arg(4000);

void BM_Simulation(benchmark::State& state) {
    pcstore::SimulationConfig cfg{{25.0, 32.0}, 1, static_cast<std::uint64_t>(state.range(0)), 0};
    cfg.warmup_jobs = cfg.total_jobs / 10;
    for (auto _ : state) benchmark::DoNotOptimize(pcstore::run_simulation(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulation)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace
