// Slow, obviously-correct reference implementations used only by tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "figop/figop_graph.hpp"
#include "figop/metric_map.hpp"
#include "figop/objective.hpp"
#include "figop/topo_map.hpp"

namespace oracle {

using figop::GridCell;
using figop::MetricMap;

// Bellman-Ford relaxation over every free cell until nothing changes.
inline std::optional<double> grid_cost(const MetricMap& map, GridCell from, GridCell to) {
  const double inf = std::numeric_limits<double>::infinity();
  const double res = map.resolution();
  std::vector<double> dist(map.cell_count(), inf);
  dist[map.index_of(from)] = 0.0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < map.cell_count(); ++i) {
      if (!std::isfinite(dist[i])) continue;
      const GridCell c = map.cell_at(i);
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const GridCell n{c.x + dx, c.y + dy};
          if (!map.contains(n) || !map.is_free(n)) continue;
          const double len = (dx != 0 && dy != 0) ? std::sqrt(2.0) : 1.0;
          const double cand = dist[i] + len * res * 0.5 * (map.at(c).risk + map.at(n).risk);
          double& d = dist[map.index_of(n)];
          if (cand < d) {
            d = cand;
            changed = true;
          }
        }
      }
    }
  }
  const double d = dist[map.index_of(to)];
  if (!std::isfinite(d)) return std::nullopt;
  return d;
}

// DBSCAN straight from the definition, O(n^2) neighbourhoods, followed by
// the singleton promotion of noise and renumbering by lowest member index.
inline std::vector<int> dbscan(const std::vector<figop::Vec2>& pts, double eps, int min_pts) {
  const int n = static_cast<int>(pts.size());
  auto neighbours = [&](int i) {
    std::vector<int> out;
    for (int j = 0; j < n; ++j) {
      if (figop::distance(pts[i], pts[j]) <= eps) out.push_back(j);
    }
    return out;
  };
  std::vector<int> label(n, -2);  // -2 unvisited, -1 noise
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (label[i] != -2) continue;
    auto nb = neighbours(i);
    if (static_cast<int>(nb.size()) < min_pts) {
      label[i] = -1;
      continue;
    }
    const int c = next++;
    label[i] = c;
    std::vector<int> seeds(nb.begin(), nb.end());
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      const int q = seeds[k];
      if (label[q] == -1) label[q] = c;
      if (label[q] != -2) continue;
      label[q] = c;
      auto nq = neighbours(q);
      if (static_cast<int>(nq.size()) >= min_pts) seeds.insert(seeds.end(), nq.begin(), nq.end());
    }
  }
  for (int i = 0; i < n; ++i) {
    if (label[i] == -1) label[i] = next++;
  }
  std::map<int, int> renumber;
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    auto it = renumber.find(label[i]);
    if (it == renumber.end()) it = renumber.emplace(label[i], static_cast<int>(renumber.size())).first;
    out[i] = it->second;
  }
  return out;
}

// Minimum over every simple path, by exhaustive depth-first enumeration.
inline std::optional<double> topo_cost(const figop::TopoMap& topo, figop::TopoId from, figop::TopoId to) {
  if (from == to) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::set<figop::TopoId> on_path{from};
  auto dfs = [&](auto&& self, figop::TopoId at, double acc) -> void {
    if (at == to) {
      best = std::min(best, acc);
      return;
    }
    for (const auto& e : topo.neighbors(at)) {
      if (on_path.count(e.to)) continue;
      on_path.insert(e.to);
      self(self, e.to, acc + e.weight);
      on_path.erase(e.to);
    }
  };
  dfs(dfs, from, 0.0);
  if (!std::isfinite(best)) return std::nullopt;
  return best;
}

// Re-rasterizes a shifted window cell by cell from a world-keyed copy.
inline MetricMap shifted_window(const MetricMap& map, figop::Vec2 new_center) {
  std::map<GridCell, figop::CellState> world;
  for (std::size_t i = 0; i < map.cell_count(); ++i) world[map.cell_at(i)] = map.cells()[i];
  MetricMap out(new_center, map.half_extent(), map.resolution());
  for (std::size_t i = 0; i < out.cell_count(); ++i) {
    const auto it = world.find(out.cell_at(i));
    out.cells_mut()[i] = it == world.end() ? figop::CellState{} : it->second;
  }
  return out;
}

// Literal nearest-next rule: min cost, then larger IG, then lower index.
inline std::vector<int> greedy(const figop::FigOpGraph& g, double budget) {
  std::vector<int> path{0};
  std::vector<bool> used(g.size(), false);
  used[0] = true;
  double spent = 0.0;
  while (true) {
    int pick = -1;
    for (int j = 1; j < static_cast<int>(g.size()); ++j) {
      if (used[j] || spent + g.edge(path.back(), j) > budget) continue;
      if (pick < 0) {
        pick = j;
        continue;
      }
      const double cj = g.edge(path.back(), j);
      const double cp = g.edge(path.back(), pick);
      if (cj < cp - 1e-9 || (std::abs(cj - cp) <= 1e-9 && g.nodes[j].info_gain > g.nodes[pick].info_gain)) pick = j;
    }
    if (pick < 0) break;
    spent += g.edge(path.back(), pick);
    used[pick] = true;
    path.push_back(pick);
  }
  return path;
}

// Best objective over all feasible ordered subsets, without any pruning.
inline double best_objective(const figop::FigOpGraph& g, const figop::ObjectiveKind& obj, double budget) {
  double best = 0.0;
  std::vector<int> path{0};
  std::vector<bool> used(g.size(), false);
  auto dfs = [&](auto&& self) -> void {
    const auto ev = figop::evaluate_path(path, g, obj, budget);
    if (!ev.feasible) return;
    best = std::max(best, ev.objective_value);
    for (int j = 1; j < static_cast<int>(g.size()); ++j) {
      if (used[j]) continue;
      used[j] = true;
      path.push_back(j);
      self(self);
      path.pop_back();
      used[j] = false;
    }
  };
  dfs(dfs);
  return best;
}

}  // namespace oracle
