#include "figop/topo_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "figop/errors.hpp"

namespace figop {

TopoId TopoMap::add_node(Vec2 position, TopoKind kind) {
  const TopoId id = next_id_++;
  nodes_.emplace(id, TopoNode{id, position, kind});
  adjacency_.emplace(id, std::vector<TopoEdge>{});
  return id;
}

void TopoMap::remove_node(TopoId id) {
  const auto it = nodes_.find(id);
  if (it == nodes_.end()) throw ContractError("unknown topological node " + std::to_string(id));
  if (it->second.kind != TopoKind::frontier) throw ContractError("breadcrumbs are permanent");
  for (const auto& e : adjacency_[id]) {
    auto& back = adjacency_[e.to];
    back.erase(std::remove_if(back.begin(), back.end(), [id](const TopoEdge& x) { return x.to == id; }),
               back.end());
  }
  adjacency_.erase(id);
  nodes_.erase(it);
}

void TopoMap::add_edge(TopoId a, TopoId b, double weight) {
  if (!contains(a) || !contains(b)) throw ContractError("edge endpoint does not exist");
  if (a == b) throw ContractError("self loops are not allowed");
  if (!(weight > 0.0) || !std::isfinite(weight)) throw ParameterError("edge weight must be positive and finite");
  if (edge_weight(a, b)) return;
  adjacency_[a].push_back({b, weight});
  adjacency_[b].push_back({a, weight});
}

const TopoNode& TopoMap::node(TopoId id) const {
  const auto it = nodes_.find(id);
  if (it == nodes_.end()) throw ContractError("unknown topological node " + std::to_string(id));
  return it->second;
}

const std::vector<TopoEdge>& TopoMap::neighbors(TopoId id) const {
  const auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw ContractError("unknown topological node " + std::to_string(id));
  return it->second;
}

std::optional<double> TopoMap::edge_weight(TopoId a, TopoId b) const {
  for (const auto& e : neighbors(a)) {
    if (e.to == b) return e.weight;
  }
  return std::nullopt;
}

std::vector<TopoId> TopoMap::ids_of_kind(TopoKind kind) const {
  std::vector<TopoId> out;
  for (const auto& [id, n] : nodes_) {
    if (n.kind == kind) out.push_back(id);
  }
  return out;
}

std::size_t TopoMap::edge_count() const {
  std::size_t twice = 0;
  for (const auto& [id, edges] : adjacency_) twice += edges.size();
  return twice / 2;
}

std::optional<TopoId> TopoMap::nearest(Vec2 p, TopoKind kind) const {
  std::optional<TopoId> best;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto& [id, n] : nodes_) {
    if (n.kind != kind) continue;
    const double d = distance(p, n.position);
    if (d < best_d) {
      best_d = d;
      best = id;
    }
  }
  return best;
}

std::map<TopoId, double> topo_cost_field(const TopoMap& topo, TopoId from) {
  topo.node(from);
  std::map<TopoId, double> dist;
  using Entry = std::pair<double, TopoId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  dist[from] = 0.0;
  open.emplace(0.0, from);
  while (!open.empty()) {
    auto [d, id] = open.top();
    open.pop();
    if (d > dist[id]) continue;
    for (const auto& e : topo.neighbors(id)) {
      const double nd = d + e.weight;
      auto it = dist.find(e.to);
      if (it == dist.end() || nd < it->second) {
        dist[e.to] = nd;
        open.emplace(nd, e.to);
      }
    }
  }
  return dist;
}

std::optional<double> topo_cost(const TopoMap& topo, TopoId from, TopoId to) {
  topo.node(from);
  topo.node(to);
  if (from == to) return 0.0;
  const auto dist = topo_cost_field(topo, from);
  const auto it = dist.find(to);
  if (it == dist.end()) return std::nullopt;
  return it->second;
}

}  // namespace figop
