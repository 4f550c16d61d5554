#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>

#include "figop/errors.hpp"
#include "figop/frontier.hpp"

namespace figop {

namespace {

// Uniform bucket grid with cell size eps, so a radius query only has to look
// at the 3x3 block of buckets around the query point.
class BucketIndex {
 public:
  BucketIndex(std::span<const Vec2> points, double eps) : points_(points), eps_(eps) {
    for (std::size_t i = 0; i < points.size(); ++i) buckets_[key(points[i])].push_back(i);
  }

  void query(std::size_t i, std::vector<std::size_t>& out) const {
    out.clear();
    const auto [bx, by] = bucket(points_[i]);
    const double eps2 = eps_ * eps_;
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        const auto it = buckets_.find(pack(bx + dx, by + dy));
        if (it == buckets_.end()) continue;
        for (std::size_t j : it->second) {
          const double ddx = points_[j].x - points_[i].x;
          const double ddy = points_[j].y - points_[i].y;
          if (ddx * ddx + ddy * ddy <= eps2) out.push_back(j);
        }
      }
    }
  }

 private:
  std::pair<long long, long long> bucket(Vec2 p) const {
    return {static_cast<long long>(std::floor(p.x / eps_)), static_cast<long long>(std::floor(p.y / eps_))};
  }
  static long long pack(long long bx, long long by) { return (bx << 32) ^ (by & 0xffffffffLL); }
  long long key(Vec2 p) const {
    const auto [bx, by] = bucket(p);
    return pack(bx, by);
  }

  std::span<const Vec2> points_;
  double eps_;
  std::unordered_map<long long, std::vector<std::size_t>> buckets_;
};

}  // namespace

std::vector<int> dbscan(std::span<const Vec2> points, double eps, int min_pts) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ParameterError("dbscan eps must be positive");
  if (min_pts < 1) throw ParameterError("dbscan min_pts must be >= 1");

  constexpr int kUnvisited = -2;
  constexpr int kNoise = -1;
  const std::size_t n = points.size();
  std::vector<int> label(n, kUnvisited);
  const BucketIndex index(points, eps);
  std::vector<std::size_t> nbrs;
  std::vector<std::size_t> nbrs2;
  int next_cluster = 0;

  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != kUnvisited) continue;
    index.query(i, nbrs);
    if (static_cast<int>(nbrs.size()) < min_pts) {
      label[i] = kNoise;
      continue;
    }
    const int cid = next_cluster++;
    label[i] = cid;
    std::deque<std::size_t> frontier(nbrs.begin(), nbrs.end());
    while (!frontier.empty()) {
      const std::size_t j = frontier.front();
      frontier.pop_front();
      if (label[j] == kNoise) label[j] = cid;  // border point
      if (label[j] != kUnvisited) continue;
      label[j] = cid;
      index.query(j, nbrs2);
      if (static_cast<int>(nbrs2.size()) >= min_pts) frontier.insert(frontier.end(), nbrs2.begin(), nbrs2.end());
    }
  }

  // Promote noise to singletons, then renumber by lowest member index.
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] == kNoise) label[i] = next_cluster++;
  }
  std::vector<int> remap(static_cast<std::size_t>(next_cluster), -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int& r = remap[static_cast<std::size_t>(label[i])];
    if (r < 0) r = next++;
    label[i] = r;
  }
  return label;
}

std::vector<FrontierCluster> cluster_frontiers(std::span<const TopoNode> nodes, std::span<const double> gains,
                                               double eps, int min_pts) {
  if (!gains.empty() && gains.size() != nodes.size()) {
    throw ContractError("one information gain per frontier node is required");
  }
  std::vector<Vec2> points;
  points.reserve(nodes.size());
  for (const auto& n : nodes) points.push_back(n.position);
  const std::vector<int> labels = dbscan(points, eps, min_pts);

  int count = 0;
  for (int l : labels) count = std::max(count, l + 1);
  std::vector<FrontierCluster> clusters(static_cast<std::size_t>(count));
  std::vector<Vec2> sum(clusters.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto& c = clusters[static_cast<std::size_t>(labels[i])];
    c.members.push_back(nodes[i].id);
    sum[static_cast<std::size_t>(labels[i])] = sum[static_cast<std::size_t>(labels[i])] + nodes[i].position;
    if (!gains.empty()) c.info_gain += gains[i];
  }
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    auto& c = clusters[k];
    c.id = static_cast<int>(k);
    c.centroid = sum[k] * (1.0 / static_cast<double>(c.members.size()));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (labels[i] != static_cast<int>(k)) continue;
      const double d = distance(nodes[i].position, c.centroid);
      if (d < best) {
        best = d;
        c.topo_node = nodes[i].id;
      }
    }
  }
  return clusters;
}

void attach_metric_cells(std::vector<FrontierCluster>& clusters, const MetricMap& map, const TopoMap& topo) {
  for (auto& c : clusters) {
    c.metric_cell.reset();
    if (!map.contains(c.centroid)) continue;
    const GridCell rep = cell_of(topo.node(c.topo_node).position, map.resolution());
    if (map.contains(rep) && map.is_free(rep)) c.metric_cell = rep;
  }
}

}  // namespace figop
