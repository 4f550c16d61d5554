#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "figop/geometry.hpp"

namespace figop {

enum class Occupancy : std::uint8_t { unknown, free, occupied };

// Risk is a traversal weight in [1, 10]; 1 is nominal flat ground. It is
// only meaningful for free cells.
struct CellState {
  Occupancy occupancy = Occupancy::unknown;
  double risk = 1.0;

  friend bool operator==(const CellState&, const CellState&) = default;
};

inline constexpr double kMinRisk = 1.0;
inline constexpr double kMaxRisk = 10.0;

// Fixed-size, robot-centered rolling window over the world grid. The window
// is aligned to the global cell lattice, so a cell keeps its GridCell index
// when the window moves.
class MetricMap {
 public:
  MetricMap(Vec2 center, double half_extent, double resolution);

  Vec2 center() const { return center_; }
  double half_extent() const { return half_extent_; }
  double resolution() const { return resolution_; }
  int side_cells() const { return side_; }
  GridCell origin() const { return origin_; }

  bool contains(GridCell c) const {
    return c.x >= origin_.x && c.y >= origin_.y && c.x < origin_.x + side_ && c.y < origin_.y + side_;
  }
  bool contains(Vec2 p) const { return contains(cell_of(p, resolution_)); }

  // Out-of-window cells read as unknown.
  CellState at(GridCell c) const;
  CellState& at_mut(GridCell c);
  void set(GridCell c, CellState s);
  bool is_free(GridCell c) const { return at(c).occupancy == Occupancy::free; }

  // Window-local storage index; `c` must be inside the window.
  std::size_t index_of(GridCell c) const {
    return static_cast<std::size_t>(c.y - origin_.y) * side_ + static_cast<std::size_t>(c.x - origin_.x);
  }
  GridCell cell_at(std::size_t index) const {
    return {origin_.x + static_cast<int>(index % side_), origin_.y + static_cast<int>(index / side_)};
  }
  std::size_t cell_count() const { return cells_.size(); }
  std::span<const CellState> cells() const { return cells_; }
  std::span<CellState> cells_mut() { return cells_; }

  friend bool operator==(const MetricMap&, const MetricMap&) = default;

 private:
  static GridCell origin_for(Vec2 center, int side, double resolution);

  Vec2 center_;
  double half_extent_;
  double resolution_;
  int side_;
  GridCell origin_;
  std::vector<CellState> cells_;
};

// Re-centers the window. Cells in the overlap keep their state; cells that
// enter the window start unknown. The cell count never changes.
MetricMap update_metric_window(const MetricMap& map, Vec2 new_center);

// Risk-weighted shortest path over 8-connected free cells. A step costs
// its Euclidean length times the mean risk of its two endpoint cells.
// Returns std::nullopt when no free path exists; throws DomainError if
// either endpoint is not a free cell of the window.
std::optional<double> metric_cost(const MetricMap& map, GridCell from, GridCell to);

// Single-source variant: cost to every window cell (infinity where unreachable),
// indexed by MetricMap::index_of.
std::vector<double> metric_cost_field(const MetricMap& map, GridCell from);

// Full shortest path, including both endpoints; empty if unreachable.
std::vector<GridCell> metric_route(const MetricMap& map, GridCell from, GridCell to);

// Plain-text occupancy snapshot: first line "width height resolution", then
// one row per line, '#' occupied, '.' free, '?' unknown. Row 0 is y = origin.y.
struct OccupancyGrid {
  int width = 0;
  int height = 0;
  double resolution = 0.5;
  std::vector<Occupancy> cells;  // row-major, y-major

  Occupancy at(int x, int y) const { return cells[static_cast<std::size_t>(y) * width + x]; }
  Occupancy& at(int x, int y) { return cells[static_cast<std::size_t>(y) * width + x]; }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
};

void write_grid(std::ostream& os, const OccupancyGrid& grid);
OccupancyGrid read_grid(std::istream& is);
OccupancyGrid snapshot(const MetricMap& map);

}  // namespace figop
