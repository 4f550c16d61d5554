#pragma once

#include <span>

#include "figop/figop_graph.hpp"
#include "figop/frontier.hpp"
#include "figop/metric_map.hpp"
#include "figop/topo_map.hpp"

namespace figop {

struct GraphBuildOptions {
  // Cost every edge on the topological map, ignoring the metric window.
  bool force_topological = false;
};

// Builds the complete multi-fidelity graph over `clusters` with the robot as
// root. An edge uses the metric planner when both endpoints have a metric
// image and a free path exists between them, and the topological shortest
// path otherwise. The root's topological image is the breadcrumb nearest the
// robot. Clusters the root cannot reach either way are left out and listed
// in FigOpGraph::unreachable.
//
// Node keys are the clusters' topological representatives; the root key is 0.
FigOpGraph build_figop_graph(Vec2 robot, std::span<const FrontierCluster> clusters, const MetricMap& map,
                             const TopoMap& topo, const GraphBuildOptions& options = {});

}  // namespace figop
