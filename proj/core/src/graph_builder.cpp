#include "figop/graph_builder.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <optional>

#include "figop/errors.hpp"

namespace figop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Endpoint {
  std::optional<GridCell> metric;
  std::optional<TopoId> topo;
};

struct CostTables {
  std::vector<std::vector<double>> metric;        // per endpoint, over window cells
  std::vector<std::map<TopoId, double>> topo;     // per endpoint
};

double pair_metric(const CostTables& t, const std::vector<Endpoint>& ep, const MetricMap& map, std::size_t i,
                   std::size_t j) {
  if (!ep[i].metric || !ep[j].metric || t.metric[i].empty()) return kInf;
  return t.metric[i][map.index_of(*ep[j].metric)];
}

double pair_topo(const CostTables& t, const std::vector<Endpoint>& ep, std::size_t i, std::size_t j) {
  if (!ep[i].topo || !ep[j].topo) return kInf;
  const auto it = t.topo[i].find(*ep[j].topo);
  return it == t.topo[i].end() ? kInf : it->second;
}

}  // namespace

FigOpGraph build_figop_graph(Vec2 robot, std::span<const FrontierCluster> clusters, const MetricMap& map,
                             const TopoMap& topo, const GraphBuildOptions& options) {
  const GridCell robot_cell = cell_of(robot, map.resolution());
  if (!map.contains(robot_cell) || !map.is_free(robot_cell)) {
    throw ContractError("robot must stand on a free metric cell");
  }
  const auto root_crumb = topo.nearest(robot, TopoKind::breadcrumb);
  if (!root_crumb) throw ContractError("robot has no breadcrumb to anchor the topological map");

  std::vector<Endpoint> ep;
  ep.reserve(clusters.size() + 1);
  ep.push_back({robot_cell, *root_crumb});
  for (const auto& c : clusters) {
    Endpoint e;
    if (c.metric_cell && map.contains(*c.metric_cell) && map.is_free(*c.metric_cell)) e.metric = c.metric_cell;
    if (topo.contains(c.topo_node)) e.topo = c.topo_node;
    ep.push_back(e);
  }
  if (options.force_topological) {
    for (auto& e : ep) e.metric.reset();
  }

  const std::size_t n = ep.size();
  CostTables tables;
  tables.metric.resize(n);
  tables.topo.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (ep[i].metric) tables.metric[i] = metric_cost_field(map, *ep[i].metric);
    if (ep[i].topo) tables.topo[i] = topo_cost_field(topo, *ep[i].topo);
  }

  // Symmetric by construction: every pair is read from the lower index.
  auto resolve = [&](std::size_t i, std::size_t j) -> std::pair<double, Fidelity> {
    const double m = pair_metric(tables, ep, map, i, j);
    if (std::isfinite(m)) return {m, Fidelity::metric};
    return {pair_topo(tables, ep, i, j), Fidelity::topological};
  };

  FigOpGraph graph;
  std::vector<std::size_t> kept;
  graph.nodes.push_back(FigOpNode{0, robot, 0.0, {}});
  kept.push_back(0);
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    const auto& c = clusters[k];
    if (!std::isfinite(resolve(0, k + 1).first)) {
      graph.unreachable.push_back(c.topo_node);
      continue;
    }
    const Vec2 pos = topo.contains(c.topo_node) ? topo.node(c.topo_node).position : c.centroid;
    graph.nodes.push_back(FigOpNode{c.topo_node, pos, c.info_gain, c.members});
    kept.push_back(k + 1);
  }

  graph.reset_edges();
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t b = a + 1; b < kept.size(); ++b) {
      auto [c, f] = resolve(kept[a], kept[b]);
      // Two root-reachable clusters are always joined through the root's
      // component; fall back to the detour if neither branch has a value.
      if (!std::isfinite(c)) {
        c = resolve(0, kept[a]).first + resolve(0, kept[b]).first;
        f = Fidelity::topological;
      }
      graph.set_edge(a, b, c, f);
    }
  }
  return graph;
}

}  // namespace figop
