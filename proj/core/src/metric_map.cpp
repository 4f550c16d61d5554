#include "figop/metric_map.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

#include "figop/errors.hpp"

namespace figop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrt2 = 1.41421356237309504880;

struct Neighbor {
  int dx;
  int dy;
  double length;
};

constexpr Neighbor kNeighbors[8] = {
    {1, 0, 1.0},     {-1, 0, 1.0},     {0, 1, 1.0},      {0, -1, 1.0},
    {1, 1, kSqrt2},  {1, -1, kSqrt2},  {-1, 1, kSqrt2},  {-1, -1, kSqrt2},
};

// Dijkstra over free window cells; fills dist and (optionally) parent.
// Stops early once `target` is settled, if given.
void grid_dijkstra(const MetricMap& map, GridCell from, std::vector<double>& dist,
                   std::vector<std::int32_t>* parent, const GridCell* target) {
  const std::size_t n = map.cell_count();
  dist.assign(n, kInf);
  if (parent) parent->assign(n, -1);
  const auto cells = map.cells();
  const double res = map.resolution();

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  const std::size_t src = map.index_of(from);
  dist[src] = 0.0;
  open.emplace(0.0, src);
  const std::size_t dst = target ? map.index_of(*target) : n;

  while (!open.empty()) {
    auto [d, idx] = open.top();
    open.pop();
    if (d > dist[idx]) continue;
    if (idx == dst) break;
    const GridCell c = map.cell_at(idx);
    const double risk_here = cells[idx].risk;
    for (const auto& nb : kNeighbors) {
      const GridCell next{c.x + nb.dx, c.y + nb.dy};
      if (!map.contains(next)) continue;
      const std::size_t nidx = map.index_of(next);
      if (cells[nidx].occupancy != Occupancy::free) continue;
      const double nd = d + nb.length * res * 0.5 * (risk_here + cells[nidx].risk);
      if (nd < dist[nidx]) {
        dist[nidx] = nd;
        if (parent) (*parent)[nidx] = static_cast<std::int32_t>(idx);
        open.emplace(nd, nidx);
      }
    }
  }
}

void require_free(const MetricMap& map, GridCell c, const char* which) {
  if (!map.contains(c) || !map.is_free(c)) {
    throw DomainError(std::string(which) + " cell (" + std::to_string(c.x) + ", " + std::to_string(c.y) +
                      ") is not a free cell of the metric map");
  }
}

}  // namespace

MetricMap::MetricMap(Vec2 center, double half_extent, double resolution)
    : center_(center), half_extent_(half_extent), resolution_(resolution) {
  if (!(resolution > 0.0) || !(half_extent > 0.0) || !std::isfinite(half_extent) || !std::isfinite(resolution)) {
    throw ParameterError("metric map needs positive, finite half extent and resolution");
  }
  side_ = std::max(1, static_cast<int>(std::lround(2.0 * half_extent / resolution)));
  origin_ = origin_for(center, side_, resolution);
  cells_.assign(static_cast<std::size_t>(side_) * side_, CellState{});
}

GridCell MetricMap::origin_for(Vec2 center, int side, double resolution) {
  const GridCell c = cell_of(center, resolution);
  return {c.x - side / 2, c.y - side / 2};
}

CellState MetricMap::at(GridCell c) const {
  if (!contains(c)) return {};
  return cells_[index_of(c)];
}

CellState& MetricMap::at_mut(GridCell c) {
  if (!contains(c)) throw DomainError("cell outside metric window");
  return cells_[index_of(c)];
}

void MetricMap::set(GridCell c, CellState s) { at_mut(c) = s; }

MetricMap update_metric_window(const MetricMap& map, Vec2 new_center) {
  MetricMap shifted(new_center, map.half_extent(), map.resolution());
  const GridCell o = shifted.origin();
  const int side = shifted.side_cells();
  for (int y = o.y; y < o.y + side; ++y) {
    for (int x = o.x; x < o.x + side; ++x) {
      const GridCell c{x, y};
      if (map.contains(c)) shifted.set(c, map.at(c));
    }
  }
  return shifted;
}

std::optional<double> metric_cost(const MetricMap& map, GridCell from, GridCell to) {
  require_free(map, from, "start");
  require_free(map, to, "goal");
  if (from == to) return 0.0;
  std::vector<double> dist;
  grid_dijkstra(map, from, dist, nullptr, &to);
  const double d = dist[map.index_of(to)];
  if (!std::isfinite(d)) return std::nullopt;
  return d;
}

std::vector<double> metric_cost_field(const MetricMap& map, GridCell from) {
  require_free(map, from, "start");
  std::vector<double> dist;
  grid_dijkstra(map, from, dist, nullptr, nullptr);
  return dist;
}

std::vector<GridCell> metric_route(const MetricMap& map, GridCell from, GridCell to) {
  require_free(map, from, "start");
  require_free(map, to, "goal");
  std::vector<double> dist;
  std::vector<std::int32_t> parent;
  grid_dijkstra(map, from, dist, &parent, &to);
  std::vector<GridCell> route;
  std::int64_t idx = static_cast<std::int64_t>(map.index_of(to));
  if (!std::isfinite(dist[idx])) return route;
  while (idx >= 0) {
    route.push_back(map.cell_at(static_cast<std::size_t>(idx)));
    idx = parent[idx];
  }
  std::reverse(route.begin(), route.end());
  return route;
}

void write_grid(std::ostream& os, const OccupancyGrid& grid) {
  os << grid.width << ' ' << grid.height << ' ' << grid.resolution << '\n';
  std::string row(static_cast<std::size_t>(grid.width), '?');
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      switch (grid.at(x, y)) {
        case Occupancy::free: row[x] = '.'; break;
        case Occupancy::occupied: row[x] = '#'; break;
        case Occupancy::unknown: row[x] = '?'; break;
      }
    }
    os << row << '\n';
  }
}

OccupancyGrid read_grid(std::istream& is) {
  OccupancyGrid grid;
  std::string line;
  int line_no = 0;
  if (!std::getline(is, line)) throw ParseError("missing header 'width height resolution'", 1);
  ++line_no;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> grid.width >> grid.height >> grid.resolution) || (header >> extra)) {
      throw ParseError("expected header 'width height resolution'", line_no);
    }
    if (grid.width <= 0 || grid.height <= 0 || !(grid.resolution > 0.0)) {
      throw ParseError("grid dimensions and resolution must be positive", line_no);
    }
  }
  grid.cells.assign(static_cast<std::size_t>(grid.width) * grid.height, Occupancy::unknown);
  for (int y = 0; y < grid.height; ++y) {
    if (!std::getline(is, line)) throw ParseError("expected " + std::to_string(grid.height) + " rows", line_no + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (static_cast<int>(line.size()) != grid.width) {
      throw ParseError("row has " + std::to_string(line.size()) + " cells, expected " + std::to_string(grid.width),
                       line_no, static_cast<int>(std::min<std::size_t>(line.size(), grid.width)) + 1);
    }
    for (int x = 0; x < grid.width; ++x) {
      switch (line[x]) {
        case '.': grid.at(x, y) = Occupancy::free; break;
        case '#': grid.at(x, y) = Occupancy::occupied; break;
        case '?': grid.at(x, y) = Occupancy::unknown; break;
        default: throw ParseError(std::string("unexpected cell character '") + line[x] + "'", line_no, x + 1);
      }
    }
  }
  return grid;
}

OccupancyGrid snapshot(const MetricMap& map) {
  OccupancyGrid grid;
  grid.width = map.side_cells();
  grid.height = map.side_cells();
  grid.resolution = map.resolution();
  grid.cells.resize(map.cell_count());
  const auto cells = map.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) grid.cells[i] = cells[i].occupancy;
  return grid;
}

}  // namespace figop
