#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "figop/environment.hpp"
#include "figop/frontier.hpp"
#include "figop/metric_map.hpp"
#include "figop/simulator.hpp"
#include "figop/solver.hpp"
#include "test_support.hpp"

using namespace figop;

namespace {

void BM_SolveGls(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto g = testing_support::random_graph(rng, static_cast<int>(state.range(0)));
  SolveRequest r;
  r.budget = 150.0;
  r.time_limit = 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_gls(g, r));
}
BENCHMARK(BM_SolveGls)->Arg(7)->Arg(15)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_SolveGreedy(benchmark::State& state) {
  std::mt19937_64 rng(11);
  const auto g = testing_support::random_graph(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_greedy(g, 150.0));
}
BENCHMARK(BM_SolveGreedy)->Arg(7)->Arg(30);

// 20 m half extent at 0.5 m cells, a quarter of them blocked.
void BM_MetricCostField(benchmark::State& state) {
  MetricMap m({0, 0}, 20.0, 0.5);
  std::mt19937_64 rng(5);
  for (auto& c : m.cells_mut()) c = {rng() % 4 ? Occupancy::free : Occupancy::occupied, 1.0 + (rng() % 90) / 10.0};
  const GridCell from = m.cell_at(m.cell_count() / 2);
  for (auto _ : state) benchmark::DoNotOptimize(metric_cost_field(m, from));
}
BENCHMARK(BM_MetricCostField)->Unit(benchmark::kMicrosecond);

void BM_Dbscan(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 40.0);
  std::vector<Vec2> pts(static_cast<std::size_t>(state.range(0)));
  for (auto& p : pts) p = {u(rng), u(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(dbscan(pts, 3.0, 2));
}
BENCHMARK(BM_Dbscan)->Arg(30)->Arg(300);

void BM_SubwayMission(benchmark::State& state) {
  const auto env = generate_subway(1, 4);
  MissionConfig cfg;
  cfg.mission_time = 120.0;
  for (auto _ : state) benchmark::DoNotOptimize(run_mission(env, cfg));
}
BENCHMARK(BM_SubwayMission)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
