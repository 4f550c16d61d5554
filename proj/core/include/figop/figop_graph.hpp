#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "figop/geometry.hpp"

namespace figop {

enum class Fidelity : std::uint8_t { metric, topological };

std::string_view to_string(Fidelity f);

// A node of the solver graph. Index 0 of FigOpGraph::nodes is always the
// root (the robot), which carries zero information gain.
struct FigOpNode {
  // Stable identity across replanning episodes (topological node id of the
  // cluster representative, or the id from an instance file).
  std::int64_t key = 0;
  Vec2 position;
  double info_gain = 0.0;
  // Keys of every topological frontier node folded into this cluster.
  std::vector<std::int64_t> members;
};

// Complete graph over frontier clusters plus the root, with a dense
// symmetric cost matrix in meters.
struct FigOpGraph {
  std::vector<FigOpNode> nodes;
  std::vector<double> cost;
  std::vector<Fidelity> fidelity;
  // Clusters that had no finite route and were left out.
  std::vector<std::int64_t> unreachable;

  std::size_t size() const { return nodes.size(); }
  std::size_t non_root_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }

  double edge(std::size_t i, std::size_t j) const { return cost[i * nodes.size() + j]; }
  Fidelity edge_fidelity(std::size_t i, std::size_t j) const { return fidelity[i * nodes.size() + j]; }

  // Resizes the matrices to match `nodes`, zero cost, metric fidelity.
  void reset_edges();
  void set_edge(std::size_t i, std::size_t j, double c, Fidelity f);
};

}  // namespace figop
