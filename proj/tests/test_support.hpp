#pragma once

#include <random>
#include <vector>

#include "figop/figop_graph.hpp"

namespace testing_support {

// Complete graph with random symmetric costs and gains; node 0 is the root.
inline figop::FigOpGraph random_graph(std::mt19937_64& rng, int n, double cost_lo = 10.0, double cost_hi = 100.0,
                                      double ig_lo = 1.0, double ig_hi = 50.0) {
  std::uniform_real_distribution<double> cost(cost_lo, cost_hi);
  std::uniform_real_distribution<double> ig(ig_lo, ig_hi);
  figop::FigOpGraph g;
  g.nodes.push_back({0, {0.0, 0.0}, 0.0, {}});
  for (int i = 1; i <= n; ++i) g.nodes.push_back({i, {static_cast<double>(i), 0.0}, ig(rng), {i}});
  g.reset_edges();
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) g.set_edge(i, j, cost(rng), figop::Fidelity::metric);
  }
  return g;
}

// Graph from an explicit upper-triangular cost list.
inline figop::FigOpGraph make_graph(const std::vector<double>& gains, const std::vector<std::vector<double>>& costs) {
  figop::FigOpGraph g;
  g.nodes.push_back({0, {0.0, 0.0}, 0.0, {}});
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const auto id = static_cast<std::int64_t>(i + 1);
    g.nodes.push_back({id, {static_cast<double>(i + 1), 0.0}, gains[i], {id}});
  }
  g.reset_edges();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) g.set_edge(i, j, costs[i][j], figop::Fidelity::metric);
  }
  return g;
}

}  // namespace testing_support
