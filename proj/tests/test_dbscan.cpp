#include <random>

#include "doctest.h"
#include "figop/errors.hpp"
#include "figop/frontier.hpp"
#include "oracles.hpp"

using namespace figop;

TEST_CASE("two well separated groups") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  std::vector<TopoNode> nodes;
  for (int g = 0; g < 2; ++g) {
    for (int i = 0; i < 5; ++i) {
      nodes.push_back({static_cast<TopoId>(nodes.size() + 1), {20.0 * g + jitter(rng), jitter(rng)}, TopoKind::frontier});
    }
  }
  const std::vector<double> gains(10, 2.0);
  const auto clusters = cluster_frontiers(nodes, gains, 2.0, 3);
  REQUIRE(clusters.size() == 2u);
  for (const auto& c : clusters) {
    CHECK(c.members.size() == 5u);
    CHECK(c.info_gain == doctest::Approx(10.0));
    CHECK_FALSE(c.metric_cell.has_value());
  }
  CHECK(clusters[0].centroid.x == doctest::Approx(0.0).epsilon(0.3));
  CHECK(clusters[1].centroid.x == doctest::Approx(20.0).epsilon(0.3));
}

TEST_CASE("single point is promoted to a singleton") {
  const std::vector<TopoNode> nodes{{7, {1.0, 2.0}, TopoKind::frontier}};
  const auto clusters = cluster_frontiers(nodes, {}, 3.0, 3);
  REQUIRE(clusters.size() == 1u);
  CHECK(clusters[0].members == std::vector<TopoId>{7});
  CHECK(clusters[0].topo_node == 7);
  CHECK(clusters[0].centroid == Vec2{1.0, 2.0});
}

TEST_CASE("representative is the member nearest the centroid") {
  const std::vector<TopoNode> nodes{
      {1, {0.0, 0.0}, TopoKind::frontier}, {2, {1.0, 0.0}, TopoKind::frontier}, {3, {2.2, 0.0}, TopoKind::frontier}};
  const auto clusters = cluster_frontiers(nodes, {}, 1.5, 2);
  REQUIRE(clusters.size() == 1u);
  CHECK(clusters[0].topo_node == 2);
}

TEST_CASE("dbscan parameter checks") {
  const std::vector<Vec2> pts{{0, 0}};
  CHECK_THROWS_AS(dbscan(pts, 0.0, 2), ParameterError);
  CHECK_THROWS_AS(dbscan(pts, 1.0, 0), ParameterError);
  CHECK(dbscan(std::vector<Vec2>{}, 1.0, 2).empty());
}

TEST_CASE("dbscan matches the quadratic reference and is deterministic") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coord(0.0, 20.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec2> pts(30);
    for (auto& p : pts) p = {coord(rng), coord(rng)};
    const double eps = 1.0 + (trial % 5);
    const int min_pts = 1 + trial % 4;
    const auto got = dbscan(pts, eps, min_pts);
    CHECK(got == oracle::dbscan(pts, eps, min_pts));
    CHECK(got == dbscan(pts, eps, min_pts));
  }
}
