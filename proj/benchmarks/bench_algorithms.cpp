#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "cayley/algorithms.hpp"
#include "cayley/oracle.hpp"

namespace {

using namespace cayley;

constexpr int kWordSize = 8;

std::shared_ptr<const CayleyTopology> topo_for(int height) {
  return std::make_shared<const CayleyTopology>(TreeParams{2, height, kWordSize});
}

std::vector<std::uint64_t> fill(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::uint64_t> xs(n);
  for (auto& x : xs) x = gen() & 0xFF;
  return xs;
}

void BM_Search(benchmark::State& state) {
  const auto topo = topo_for(static_cast<int>(state.range(0)));
  const auto xs = fill(topo->size() - 1, 1);
  std::uint64_t cycles = 0;
  for (auto _ : state) {
    auto tree = load_list(topo, xs, Mode::Search, xs.front());
    const auto r = search(tree, xs.front());
    cycles = r.cycles;
    benchmark::DoNotOptimize(r.found);
  }
  state.counters["cycles"] = static_cast<double>(cycles);
  state.counters["nodes"] = static_cast<double>(topo->size());
}

void BM_Max(benchmark::State& state) {
  const auto topo = topo_for(static_cast<int>(state.range(0)));
  const auto xs = fill(topo->size() - 1, 2);
  std::uint64_t cycles = 0;
  for (auto _ : state) {
    auto tree = load_list(topo, xs, Mode::Max);
    const auto r = compute_max(tree);
    cycles = r.cycles;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["cycles"] = static_cast<double>(cycles);
  state.counters["nodes"] = static_cast<double>(topo->size());
}

void BM_Sort(benchmark::State& state) {
  const auto topo = topo_for(static_cast<int>(state.range(0)));
  const auto xs = fill(topo->size() - 1, 3);
  SortResult r;
  for (auto _ : state) {
    r = sort(topo, xs);
    benchmark::DoNotOptimize(r.output.data());
  }
  state.counters["cycles"] = static_cast<double>(r.cycles_total);
  state.counters["rounds"] = static_cast<double>(r.rounds);
}

void BM_Baseline(benchmark::State& state) {
  const auto baseline = oracle::kAllBaselines[static_cast<std::size_t>(state.range(0))];
  const auto xs = fill(static_cast<std::size_t>(state.range(1)), 3);
  std::uint64_t comparisons = 0;
  for (auto _ : state) {
    const auto r = oracle::run_baseline(baseline, xs);
    comparisons = r.comparisons;
    benchmark::DoNotOptimize(r.output.data());
  }
  state.SetLabel(oracle::to_string(baseline));
  state.counters["comparisons"] = static_cast<double>(comparisons);
}

BENCHMARK(BM_Search)->DenseRange(2, 10, 2);
BENCHMARK(BM_Max)->DenseRange(2, 10, 2);
BENCHMARK(BM_Sort)->DenseRange(2, 8, 2);
BENCHMARK(BM_Baseline)->ArgsProduct({benchmark::CreateDenseRange(0, 6, 1), {126, 1022}});

}  // namespace

BENCHMARK_MAIN();
