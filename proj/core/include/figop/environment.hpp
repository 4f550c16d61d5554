#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "figop/metric_map.hpp"

namespace figop {

// Ground truth for the simulator. The occupancy grid is anchored at the
// world origin: grid cell (x, y) is GridCell{x, y}. Everything outside the
// grid counts as occupied.
struct Environment {
  OccupancyGrid truth;
  std::vector<double> risk;  // per cell, row-major; 1 on nominal ground
  GridCell start;
  double free_area = 0.0;    // m^2
  std::string descriptor;

  double resolution() const { return truth.resolution; }
  bool is_free(GridCell c) const {
    return truth.in_bounds(c.x, c.y) && truth.at(c.x, c.y) == Occupancy::free;
  }
  double risk_at(GridCell c) const { return risk[static_cast<std::size_t>(c.y) * truth.width + c.x]; }
  Vec2 extent() const { return {truth.width * truth.resolution, truth.height * truth.resolution}; }
};

struct MazeOptions {
  double corridor_width = 3.0;  // m
  double wall_thickness = 1.0;  // m
  // Fraction of remaining interior walls knocked out after carving, adding loops.
  double loop_fraction = 0.0;
  double resolution = 0.5;
};

// Randomized depth-first-search maze on a width x height lattice. Start is
// the lattice cell closest to the middle.
Environment generate_maze(std::uint64_t seed, int width, int height, const MazeOptions& options = {});

// Lattice-level view of a maze, for analysis: open[y][x] bit k set when the
// passage toward direction k (E, N, W, S) is open.
struct MazeLattice {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> open;
};
MazeLattice maze_lattice(std::uint64_t seed, int width, int height, double loop_fraction = 0.0);

struct Room {
  double x0, y0, x1, y1;  // m, axis aligned
  double area() const { return (x1 - x0) * (y1 - y0); }
};

struct SubwayLayout {
  std::vector<Room> rooms;
  std::vector<Room> corridors;  // as axis-aligned strips
};

// Axis-aligned rooms (8-30 m sides) joined into a tree by 2-4 m wide
// L-shaped corridors. Start is the center of the first room.
Environment generate_subway(std::uint64_t seed, int room_count, SubwayLayout* layout = nullptr);

// Hub with corridors of varying width and length radiating from it, used for
// the heading-sensitivity study.
Environment generate_junction(std::uint64_t seed);

// Symmetric plus-shaped corridor system, start in the middle.
Environment generate_cross(double arm_length, double corridor_width, double resolution = 0.5);

// Single rectangular room, start in the middle.
Environment generate_room(double width, double height, double resolution = 0.5);

// Unknown cells are treated as occupied. Free cells must form one connected
// component containing the start; otherwise ParameterError.
Environment environment_from_grid(OccupancyGrid grid, std::string descriptor = "file");
Environment load_environment(const std::filesystem::path& path);

// Smooth random risk patches over free cells, values in [1, 10].
void apply_risk_patches(Environment& env, std::uint64_t seed, double patches_per_100m2 = 0.25,
                        double max_amplitude = 2.0);

// Number of free cells reachable from the start.
std::size_t reachable_free_cells(const Environment& env);

}  // namespace figop
