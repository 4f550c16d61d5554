#include <random>

#include "doctest.h"
#include "figop/errors.hpp"
#include "figop/topo_map.hpp"
#include "oracles.hpp"

using namespace figop;

TEST_CASE("topological shortest paths by hand") {
  TopoMap t;
  const auto a = t.add_node({0, 0}, TopoKind::breadcrumb);
  const auto b = t.add_node({2, 0}, TopoKind::breadcrumb);
  const auto c = t.add_node({5, 0}, TopoKind::frontier);
  t.add_edge(a, b, 2.0);
  t.add_edge(b, c, 3.0);
  CHECK(*topo_cost(t, a, a) == 0.0);
  CHECK(*topo_cost(t, a, c) == 5.0);
  CHECK(*topo_cost(t, c, a) == 5.0);
  const auto d = t.add_node({9, 9}, TopoKind::breadcrumb);
  CHECK_FALSE(topo_cost(t, a, d).has_value());
  CHECK_THROWS_AS(topo_cost(t, a, 999), ContractError);
  const auto field = topo_cost_field(t, a);
  CHECK(field.size() == 3u);
  CHECK(field.at(c) == 5.0);
}

TEST_CASE("edges keep their first weight and reject bad input") {
  TopoMap t;
  const auto a = t.add_node({0, 0}, TopoKind::breadcrumb);
  const auto b = t.add_node({1, 0}, TopoKind::frontier);
  t.add_edge(a, b, 4.0);
  t.add_edge(b, a, 1.0);
  CHECK(*t.edge_weight(a, b) == 4.0);
  CHECK(t.edge_count() == 1u);
  CHECK_THROWS_AS(t.add_edge(a, b, 0.0), ParameterError);
  CHECK_THROWS_AS(t.add_edge(a, b, -2.0), ParameterError);
  CHECK_THROWS_AS(t.add_edge(a, 77, 1.0), ContractError);
}

TEST_CASE("removing frontier nodes drops incident edges") {
  TopoMap t;
  const auto a = t.add_node({0, 0}, TopoKind::breadcrumb);
  const auto f = t.add_node({1, 0}, TopoKind::frontier);
  t.add_edge(a, f, 1.0);
  t.remove_node(f);
  CHECK_FALSE(t.contains(f));
  CHECK(t.neighbors(a).empty());
  CHECK(t.edge_count() == 0u);
  CHECK_THROWS_AS(t.remove_node(a), ContractError);
  CHECK(t.add_node({3, 3}, TopoKind::frontier) != f);  // ids are never reused
}

TEST_CASE("nearest node by kind with id tie-break") {
  TopoMap t;
  const auto a = t.add_node({1, 0}, TopoKind::breadcrumb);
  t.add_node({-1, 0}, TopoKind::breadcrumb);
  t.add_node({0, 0.1}, TopoKind::frontier);
  CHECK(*t.nearest({0, 0}, TopoKind::breadcrumb) == a);
  CHECK_FALSE(TopoMap{}.nearest({0, 0}, TopoKind::frontier).has_value());
}

TEST_CASE("topo cost equals exhaustive simple path enumeration") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> w(0.5, 20.0);
  for (int trial = 0; trial < 40; ++trial) {
    TopoMap t;
    std::vector<TopoId> ids;
    for (int i = 0; i < 12; ++i) ids.push_back(t.add_node({double(i), 0.0}, TopoKind::breadcrumb));
    for (int i = 0; i < 12; ++i) {
      for (int j = i + 1; j < 12; ++j) {
        if (rng() % 100 < 25) t.add_edge(ids[i], ids[j], w(rng));
      }
    }
    for (int q = 0; q < 5; ++q) {
      const auto from = ids[rng() % 12];
      const auto to = ids[rng() % 12];
      const auto got = topo_cost(t, from, to);
      const auto want = oracle::topo_cost(t, from, to);
      REQUIRE(got.has_value() == want.has_value());
      if (got) CHECK(*got == doctest::Approx(*want).epsilon(1e-12));
    }
  }
}
