#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "figop/geometry.hpp"

namespace figop {

using TopoId = std::int64_t;

enum class TopoKind : std::uint8_t { breadcrumb, frontier };

struct TopoNode {
  TopoId id = 0;
  Vec2 position;
  TopoKind kind = TopoKind::breadcrumb;
};

struct TopoEdge {
  TopoId to = 0;
  double weight = 0.0;
};

// Global sparse graph of breadcrumbs and frontiers. Edge weights are set
// once, when the edge is created, and never revised.
class TopoMap {
 public:
  TopoId add_node(Vec2 position, TopoKind kind);
  // Removes a node and its incident edges. Only frontier nodes may be removed.
  void remove_node(TopoId id);
  // Throws ParameterError for non-positive weights, ContractError for unknown
  // ids. An existing edge keeps its original weight.
  void add_edge(TopoId a, TopoId b, double weight);

  bool contains(TopoId id) const { return nodes_.count(id) != 0; }
  const TopoNode& node(TopoId id) const;
  const std::vector<TopoEdge>& neighbors(TopoId id) const;
  std::optional<double> edge_weight(TopoId a, TopoId b) const;

  // Nodes in ascending id order.
  const std::map<TopoId, TopoNode>& nodes() const { return nodes_; }
  std::vector<TopoId> ids_of_kind(TopoKind kind) const;
  std::size_t edge_count() const;
  TopoId next_id() const { return next_id_; }

  // Nearest node of the given kind by Euclidean distance; ties go to the lower id.
  std::optional<TopoId> nearest(Vec2 p, TopoKind kind) const;

 private:
  std::map<TopoId, TopoNode> nodes_;
  std::map<TopoId, std::vector<TopoEdge>> adjacency_;
  TopoId next_id_ = 1;
};

// Dijkstra over edge weights. nullopt when disconnected. ContractError for
// unknown ids.
std::optional<double> topo_cost(const TopoMap& topo, TopoId from, TopoId to);

// Distances from `from` to every reachable node.
std::map<TopoId, double> topo_cost_field(const TopoMap& topo, TopoId from);

}  // namespace figop
