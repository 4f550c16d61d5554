#include "figop/frontier.hpp"

#include <cmath>
#include <deque>

#include "figop/errors.hpp"

namespace figop {

namespace {

constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

}  // namespace

bool is_frontier_cell(const MetricMap& map, GridCell c) {
  if (!map.contains(c) || !map.is_free(c)) return false;
  for (int k = 0; k < 8; ++k) {
    const GridCell n{c.x + kDx[k], c.y + kDy[k]};
    if (map.contains(n) && map.at(n).occupancy == Occupancy::unknown) return true;
  }
  return false;
}

std::vector<FrontierSegment> detect_frontiers(const MetricMap& map) {
  const std::size_t n = map.cell_count();
  std::vector<char> frontier(n, 0);
  for (std::size_t i = 0; i < n; ++i) frontier[i] = is_frontier_cell(map, map.cell_at(i)) ? 1 : 0;

  std::vector<FrontierSegment> segments;
  std::vector<char> taken(n, 0);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (!frontier[i] || taken[i]) continue;
    FrontierSegment seg;
    taken[i] = 1;
    queue.push_back(i);
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      const GridCell c = map.cell_at(cur);
      seg.push_back(c);
      for (int k = 0; k < 8; ++k) {
        const GridCell nb{c.x + kDx[k], c.y + kDy[k]};
        if (!map.contains(nb)) continue;
        const std::size_t j = map.index_of(nb);
        if (frontier[j] && !taken[j]) {
          taken[j] = 1;
          queue.push_back(j);
        }
      }
    }
    segments.push_back(std::move(seg));
  }
  return segments;
}

void SensorModel::validate() const {
  if (!(r_sense > 0.0) || !(long_range > r_sense)) {
    throw ParameterError("sensor model needs 0 < r_sense < long_range");
  }
  if (rays_per_scan <= 0) throw ParameterError("rays_per_scan must be positive");
}

bool associated_with_long_range(const FrontierSegment& segment, const MetricMap& map,
                                const LongRangeReturns& long_range, const InfoGainParams& params) {
  if (long_range.empty() || segment.empty()) return false;
  std::unordered_set<GridCell> seen;
  std::deque<std::pair<GridCell, int>> queue;
  for (const GridCell& c : segment) {
    for (int k = 0; k < 8; ++k) {
      const GridCell nb{c.x + kDx[k], c.y + kDy[k]};
      if (map.contains(nb) && map.at(nb).occupancy == Occupancy::unknown && seen.insert(nb).second) {
        queue.emplace_back(nb, 1);
      }
    }
  }
  while (!queue.empty()) {
    auto [c, depth] = queue.front();
    queue.pop_front();
    if (long_range.count(c)) return true;
    if (depth >= params.association_cells) continue;
    for (int k = 0; k < 8; ++k) {
      const GridCell nb{c.x + kDx[k], c.y + kDy[k]};
      if (map.contains(nb) && map.at(nb).occupancy == Occupancy::unknown && seen.insert(nb).second) {
        queue.emplace_back(nb, depth + 1);
      }
    }
  }
  return false;
}

double estimate_info_gain(const FrontierSegment& segment, const MetricMap& map, const SensorModel& sensor,
                          const LongRangeReturns& long_range, const InfoGainParams& params) {
  if (segment.empty()) throw ContractError("info gain of an empty frontier segment");
  const double breadth = static_cast<double>(segment.size()) * map.resolution();
  const double depth = associated_with_long_range(segment, map, long_range, params) ? params.depth_boost : 1.0;
  return breadth * sensor.r_sense * depth;
}

}  // namespace figop
