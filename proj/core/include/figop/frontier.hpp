#pragma once

#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "figop/metric_map.hpp"
#include "figop/topo_map.hpp"

namespace figop {

// Maximal 8-connected run of frontier cells.
using FrontierSegment = std::vector<GridCell>;

// A free window cell with at least one unknown 8-neighbor inside the window.
bool is_frontier_cell(const MetricMap& map, GridCell c);

// Segments in row-major discovery order; cells within a segment in BFS order.
std::vector<FrontierSegment> detect_frontiers(const MetricMap& map);

struct SensorModel {
  double r_sense = 10.0;
  double long_range = 25.0;
  int rays_per_scan = 720;

  void validate() const;
};

struct InfoGainParams {
  // Multiplier for segments that open onto long-range returns.
  double depth_boost = 2.0;
  // How far (in cells) to search through unknown space for a long-range return.
  int association_cells = 4;
};

// Free cells seen only by the long-range pass of a scan (beyond r_sense).
using LongRangeReturns = std::unordered_set<GridCell>;

// True when a breadth-first walk through unknown cells, starting next to the
// segment and bounded by params.association_cells, reaches a long-range return.
bool associated_with_long_range(const FrontierSegment& segment, const MetricMap& map,
                                const LongRangeReturns& long_range, const InfoGainParams& params = {});

// Expected uncovered area in m^2: breadth (cells * resolution) times the
// sensing depth r_sense, times depth_boost if the segment is associated with
// a long-range return.
double estimate_info_gain(const FrontierSegment& segment, const MetricMap& map, const SensorModel& sensor,
                          const LongRangeReturns& long_range = {}, const InfoGainParams& params = {});

struct FrontierCluster {
  int id = 0;
  Vec2 centroid;
  std::vector<TopoId> members;
  // Metric image of the cluster, set when the centroid lies in the window.
  std::optional<GridCell> metric_cell;
  // Topological image: the member nearest the centroid.
  TopoId topo_node = 0;
  double info_gain = 0.0;
};

// DBSCAN with Euclidean distance. Returns one label per point; points that
// standard DBSCAN marks as noise receive their own singleton label. Labels
// are numbered in order of their lowest member index.
std::vector<int> dbscan(std::span<const Vec2> points, double eps, int min_pts);

// Clusters frontier nodes; `gains` (same length as `nodes`, or empty for
// zeros) are summed per cluster. metric_cell is left unset.
std::vector<FrontierCluster> cluster_frontiers(std::span<const TopoNode> nodes, std::span<const double> gains,
                                               double eps = 3.0, int min_pts = 2);

// Sets metric_cell for clusters whose centroid lies inside the window, using
// the cell of the representative member.
void attach_metric_cells(std::vector<FrontierCluster>& clusters, const MetricMap& map, const TopoMap& topo);

}  // namespace figop
