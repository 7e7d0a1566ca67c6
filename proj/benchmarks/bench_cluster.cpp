#include <benchmark/benchmark.h>

#include <string>

#include "pcstore/cluster_model.hpp"

namespace {

using namespace pcstore;

// Store then delete one file on a cluster of range(0) nodes.
void BM_StoreDelete(benchmark::State& state) {
    Cluster c;
    for (int i = 0; i < state.range(0); ++i) c.register_node("D" + std::to_string(i), 80 * kGB);
    for (auto _ : state) {
        benchmark::DoNotOptimize(c.store_file("f", 1000 * kMB));
        benchmark::DoNotOptimize(c.delete_file("f"));
    }
}
BENCHMARK(BM_StoreDelete)->Arg(5)->Arg(20)->Arg(200);

void BM_SplitIntoBlocks(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(split_into_blocks(100 * kGB, 64 * kMB));
}
BENCHMARK(BM_SplitIntoBlocks);

}  // namespace
