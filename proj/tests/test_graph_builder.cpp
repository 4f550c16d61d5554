#include <cmath>
#include <random>

#include "doctest.h"
#include "figop/errors.hpp"
#include "figop/graph_builder.hpp"

using namespace figop;

namespace {

// 20 m x 20 m open window at 1 m resolution, origin (0, 0).
MetricMap open_window() {
  MetricMap m({10.0, 10.0}, 10.0, 1.0);
  for (auto& c : m.cells_mut()) c = {Occupancy::free, 1.0};
  return m;
}

FrontierCluster cluster_at(TopoMap& topo, Vec2 p, double ig, const MetricMap* map) {
  FrontierCluster c;
  c.topo_node = topo.add_node(p, TopoKind::frontier);
  c.members = {c.topo_node};
  c.centroid = p;
  c.info_gain = ig;
  if (map && map->contains(p)) c.metric_cell = cell_of(p, map->resolution());
  return c;
}

}  // namespace

TEST_CASE("clusters in an open window get metric edges") {
  const auto map = open_window();
  TopoMap topo;
  const auto crumb = topo.add_node({2.5, 2.5}, TopoKind::breadcrumb);
  std::vector<FrontierCluster> cl{cluster_at(topo, {12.5, 2.5}, 5.0, &map), cluster_at(topo, {2.5, 12.5}, 7.0, &map)};
  topo.add_edge(crumb, cl[0].topo_node, 10.0);
  topo.add_edge(crumb, cl[1].topo_node, 10.0);

  const auto g = build_figop_graph({2.5, 2.5}, cl, map, topo);
  REQUIRE(g.size() == 3u);
  CHECK(g.nodes[0].key == 0);
  CHECK(g.nodes[1].info_gain == 5.0);
  CHECK(g.edge(0, 1) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(g.edge_fidelity(0, 1) == Fidelity::metric);
  CHECK(g.edge(1, 2) == doctest::Approx(10.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(g.edge(1, 2) == g.edge(2, 1));
  CHECK(g.unreachable.empty());

  const auto lf = build_figop_graph({2.5, 2.5}, cl, map, topo, {.force_topological = true});
  CHECK(lf.edge_fidelity(0, 1) == Fidelity::topological);
  CHECK(lf.edge(1, 2) == doctest::Approx(20.0));
  // Metric and topological costs agree within 2x on a fresh static map.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      CHECK(g.edge(i, j) <= lf.edge(i, j));
      CHECK(lf.edge(i, j) <= 2.0 * g.edge(i, j));
    }
  }
}

TEST_CASE("cluster beyond the window is costed topologically") {
  const auto map = open_window();
  TopoMap topo;
  const auto crumb = topo.add_node({2.5, 2.5}, TopoKind::breadcrumb);
  const auto far_crumb = topo.add_node({18.5, 2.5}, TopoKind::breadcrumb);
  topo.add_edge(crumb, far_crumb, 16.0);
  std::vector<FrontierCluster> cl{cluster_at(topo, {40.0, 2.5}, 3.0, &map)};
  topo.add_edge(far_crumb, cl[0].topo_node, 21.5);
  const auto g = build_figop_graph({2.5, 2.5}, cl, map, topo);
  REQUIRE(g.size() == 2u);
  CHECK(g.edge_fidelity(0, 1) == Fidelity::topological);
  CHECK(g.edge(0, 1) == doctest::Approx(37.5));
}

TEST_CASE("loop closure: the metric branch cuts across a U shaped topological route") {
  // Topological graph walks down one arm of a U and up the other; the metric
  // window sees straight across.
  const auto map = open_window();
  TopoMap topo;
  const auto a = topo.add_node({2.5, 2.5}, TopoKind::breadcrumb);
  const auto b = topo.add_node({8.5, 2.5}, TopoKind::breadcrumb);
  topo.add_edge(a, b, 6.0);
  std::vector<FrontierCluster> cl{cluster_at(topo, {2.5, 16.5}, 1.0, &map), cluster_at(topo, {8.5, 16.5}, 1.0, &map)};
  topo.add_edge(a, cl[0].topo_node, 14.0);
  topo.add_edge(b, cl[1].topo_node, 14.0);

  const auto g = build_figop_graph({2.5, 2.5}, cl, map, topo);
  const auto lf = build_figop_graph({2.5, 2.5}, cl, map, topo, {.force_topological = true});
  CHECK(g.edge_fidelity(1, 2) == Fidelity::metric);
  CHECK(g.edge(1, 2) == doctest::Approx(6.0));
  CHECK(lf.edge(1, 2) == doctest::Approx(34.0));
  CHECK(g.edge(1, 2) < lf.edge(1, 2));
}

TEST_CASE("walled off metric pair falls back to the topological branch") {
  auto map = open_window();
  for (int y = 0; y < 20; ++y) map.set({10, y}, {Occupancy::occupied, 1.0});
  TopoMap topo;
  const auto crumb = topo.add_node({2.5, 2.5}, TopoKind::breadcrumb);
  std::vector<FrontierCluster> cl{cluster_at(topo, {15.5, 2.5}, 1.0, &map)};
  topo.add_edge(crumb, cl[0].topo_node, 30.0);
  const auto g = build_figop_graph({2.5, 2.5}, cl, map, topo);
  CHECK(g.edge_fidelity(0, 1) == Fidelity::topological);
  CHECK(g.edge(0, 1) == 30.0);
}

TEST_CASE("cluster with neither branch is reported unreachable") {
  auto map = open_window();
  for (int y = 0; y < 20; ++y) map.set({10, y}, {Occupancy::occupied, 1.0});
  TopoMap topo;
  topo.add_node({2.5, 2.5}, TopoKind::breadcrumb);
  std::vector<FrontierCluster> cl{cluster_at(topo, {15.5, 2.5}, 1.0, &map), cluster_at(topo, {5.5, 5.5}, 1.0, &map)};
  const auto g = build_figop_graph({2.5, 2.5}, cl, map, topo);
  CHECK(g.size() == 2u);
  CHECK(g.unreachable == std::vector<std::int64_t>{cl[0].topo_node});
  CHECK(g.nodes[1].key == cl[1].topo_node);
}

TEST_CASE("build preconditions") {
  auto map = open_window();
  TopoMap topo;
  CHECK_THROWS_AS(build_figop_graph({2.5, 2.5}, {}, map, topo), ContractError);
  topo.add_node({2.5, 2.5}, TopoKind::breadcrumb);
  map.set({2, 2}, {Occupancy::occupied, 1.0});
  CHECK_THROWS_AS(build_figop_graph({2.5, 2.5}, {}, map, topo), ContractError);
}

TEST_CASE("edge costs are symmetric on random layouts") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> coord(0.5, 19.5);
  for (int trial = 0; trial < 20; ++trial) {
    auto map = open_window();
    for (int k = 0; k < 60; ++k) map.set({static_cast<int>(rng() % 20), static_cast<int>(rng() % 20)}, {Occupancy::occupied, 1.0});
    map.set({10, 10}, {Occupancy::free, 1.0});
    TopoMap topo;
    const auto crumb = topo.add_node({10.5, 10.5}, TopoKind::breadcrumb);
    std::vector<FrontierCluster> cl;
    for (int k = 0; k < 6; ++k) {
      Vec2 p{coord(rng), coord(rng)};
      const auto c = cell_of(p, 1.0);
      map.set(c, {Occupancy::free, 1.0});
      cl.push_back(cluster_at(topo, p, 1.0, &map));
      topo.add_edge(crumb, cl.back().topo_node, 1.0 + distance(p, {10.5, 10.5}));
    }
    const auto g = build_figop_graph({10.5, 10.5}, cl, map, topo);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(g.edge(i, i) == 0.0);
      for (std::size_t j = 0; j < g.size(); ++j) {
        CHECK(g.edge(i, j) == g.edge(j, i));
        CHECK(g.edge_fidelity(i, j) == g.edge_fidelity(j, i));
        if (i != j) CHECK(std::isfinite(g.edge(i, j)));
      }
    }
  }
}
