// Compares the straightforward per-network implementations against the
// plan-based kernels the sweep uses, serial and OpenMP.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <fstream>

#include "actnet/dataset.hpp"
#include "actnet/experiment.hpp"

using namespace actnet;

namespace {

const ActivityNetwork& dataset() {
  static const ActivityNetwork net = [] {
    const std::filesystem::path raw =
        std::filesystem::path(ACTNET_DATA_DIR) / "raw";
    std::ifstream nodes(raw / "nodes.csv"), edges(raw / "edges.csv");
    return load_dataset(nodes, edges);
  }();
  return net;
}

int widest_seed(const ActivityNetwork& net) {
  int best = 0;
  std::size_t best_size = 0;
  for (int v = 0; v < net.node_count(); ++v) {
    const std::size_t size = net.out_component(v).size();
    if (size > best_size) {
      best_size = size;
      best = v;
    }
  }
  return best;
}

void BM_cascade_reference(benchmark::State& state) {
  const ActivityNetwork& net = dataset();
  const int seed = widest_seed(net);
  const CascadeParams params{0.6, 10.0};
  int run = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_cascade(net, seed, params, RngStream(1, seed, run++)).size);
  }
}

void BM_cascade_plan_kernel(benchmark::State& state) {
  const ActivityNetwork& net = dataset();
  const int seed = widest_seed(net);
  const SeedPlan plan = make_seed_plan(net, seed);
  const auto etab = exp_table(10.0, net.project_end());
  std::vector<std::uint8_t> failed(plan.nodes.size());
  int run = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_cascade_on_plan(plan, plan.base_start, plan.base_end, 0.6, etab,
                            RngStream(1, seed, run++), failed));
  }
}

SweepConfig cell_config(int threads) {
  SweepConfig config;
  config.q0_grid = {0.6};
  config.tau_grid = {10.0};
  config.gamma_grid = {1.0};
  for (int kind = 0; kind < kSchemeCount; ++kind) {
    config.schemes.push_back({static_cast<SchemeKind>(kind)});
  }
  config.n_runs = 100;
  config.master_seed = 1;
  config.threads = threads;
  return config;
}

// All six schemes at one (q0, tau): 723 seeds x 100 paired runs each.
void BM_sweep_cell_serial(benchmark::State& state) {
  const ActivityNetwork& net = dataset();
  const SweepConfig config = cell_config(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(net, config).rows.size());
  }
}

void BM_sweep_cell_parallel(benchmark::State& state) {
  const ActivityNetwork& net = dataset();
  const SweepConfig config = cell_config(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep(net, config).rows.size());
  }
}

// The whole-network implementation the optimized path is tested against.
void BM_sweep_cell_reference(benchmark::State& state) {
  const ActivityNetwork& net = dataset();
  SweepConfig config = cell_config(1);
  config.n_runs = 5;  // two orders of magnitude slower per run
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_reference(net, config).rows.size());
  }
}

}  // namespace

BENCHMARK(BM_cascade_reference);
BENCHMARK(BM_cascade_plan_kernel);
BENCHMARK(BM_sweep_cell_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_cell_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_cell_reference)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
