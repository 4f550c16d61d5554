#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "figop/environment.hpp"
#include "figop/errors.hpp"

using namespace figop;

namespace {

std::size_t free_cell_count(const Environment& env) {
  std::size_t n = 0;
  for (auto c : env.truth.cells) n += c == Occupancy::free;
  return n;
}

// Degree of every lattice cell, recovered from the occupancy grid by probing
// the wall gap between neighbouring cell blocks.
std::vector<int> degrees_from_grid(const Environment& env, int width, int height, int c, int w) {
  const int pitch = c + w;
  std::vector<int> deg(static_cast<std::size_t>(width) * height, 0);
  for (int ly = 0; ly < height; ++ly) {
    for (int lx = 0; lx < width; ++lx) {
      const int cx = w + lx * pitch + c / 2;
      const int cy = w + ly * pitch + c / 2;
      if (lx + 1 < width && env.is_free({w + lx * pitch + c, cy})) {
        ++deg[ly * width + lx];
        ++deg[ly * width + lx + 1];
      }
      if (ly + 1 < height && env.is_free({cx, w + ly * pitch + c})) {
        ++deg[ly * width + lx];
        ++deg[(ly + 1) * width + lx];
      }
    }
  }
  return deg;
}

}  // namespace

TEST_CASE("maze generation is connected and deterministic") {
  const auto a = generate_maze(3, 3, 3);
  CHECK(reachable_free_cells(a) == free_cell_count(a));
  CHECK(a.is_free(a.start));
  const auto b = generate_maze(3, 3, 3);
  CHECK(a.truth.cells == b.truth.cells);
  CHECK(a.risk == b.risk);
  CHECK(a.free_area == doctest::Approx(free_cell_count(a) * 0.25));
  CHECK(generate_maze(3, 8, 8).truth.cells != generate_maze(4, 8, 8).truth.cells);
  CHECK_THROWS_AS(generate_maze(1, 0, 3), ParameterError);
  CHECK_THROWS_AS(generate_maze(1, 3, 3, {.corridor_width = 0.0}), ParameterError);
}

TEST_CASE("maze grid carries the lattice and has a branchy character") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto env = generate_maze(seed, 20, 20);
    const auto lat = maze_lattice(seed, 20, 20);
    const auto deg = degrees_from_grid(env, 20, 20, 6, 2);
    int dead = 0;
    int junction = 0;
    for (int i = 0; i < 400; ++i) {
      CHECK(deg[i] == std::popcount(static_cast<unsigned>(lat.open[i])));
      dead += deg[i] == 1;
      junction += deg[i] >= 3;
    }
    const double share = static_cast<double>(dead) / (dead + junction);
    CHECK(share >= 0.10);
    CHECK(share <= 0.60);
  }
}

TEST_CASE("subway layouts") {
  SubwayLayout two;
  const auto env2 = generate_subway(11, 2, &two);
  CHECK(two.rooms.size() == 2u);
  // A single L-shaped corridor, stored as its two straight strips.
  CHECK(two.corridors.size() == 2u);
  CHECK(reachable_free_cells(env2) == free_cell_count(env2));

  SubwayLayout eight;
  const auto env = generate_subway(5, 8, &eight);
  const auto again = generate_subway(5, 8);
  CHECK(env.truth.cells == again.truth.cells);
  CHECK(eight.rooms.size() == 8u);
  CHECK(eight.corridors.size() == 14u);
  double rooms = 0.0;
  for (const auto& r : eight.rooms) {
    CHECK(r.x1 - r.x0 >= 8.0);
    CHECK(r.x1 - r.x0 <= 30.0);
    CHECK(r.y1 - r.y0 >= 8.0);
    CHECK(r.y1 - r.y0 <= 30.0);
    rooms += r.area();
  }
  // Strips are carved cell by cell, so each may pick up one cell row per side.
  double corridor_bound = 0.0;
  for (const auto& s : eight.corridors) corridor_bound += (s.x1 - s.x0 + 1.0) * (s.y1 - s.y0 + 1.0);
  CHECK(env.free_area >= rooms);
  CHECK(env.free_area <= rooms + corridor_bound);
  CHECK_THROWS_AS(generate_subway(1, 1), ParameterError);
}

TEST_CASE("junction, cross and room environments") {
  const auto j = generate_junction(2);
  CHECK(reachable_free_cells(j) == free_cell_count(j));
  CHECK(j.truth.cells == generate_junction(2).truth.cells);

  const auto cross = generate_cross(15.0, 2.5);
  CHECK(reachable_free_cells(cross) == free_cell_count(cross));
  // Symmetric under reflection through the start cell.
  for (int y = 0; y < cross.truth.height; ++y) {
    for (int x = 0; x < cross.truth.width; ++x) {
      const GridCell m{2 * cross.start.x - x, 2 * cross.start.y - y};
      CHECK(cross.is_free({x, y}) == cross.is_free(m));
    }
  }

  const auto room = generate_room(10.0, 6.0);
  CHECK(room.free_area == doctest::Approx(60.0));
  for (double r : room.risk) CHECK(r == 1.0);
}

TEST_CASE("risk patches stay in range and are seeded") {
  auto env = generate_room(30.0, 30.0);
  auto copy = env;
  apply_risk_patches(env, 9);
  apply_risk_patches(copy, 9);
  CHECK(env.risk == copy.risk);
  bool raised = false;
  for (std::size_t i = 0; i < env.risk.size(); ++i) {
    CHECK(env.risk[i] >= kMinRisk);
    CHECK(env.risk[i] <= kMaxRisk);
    raised = raised || env.risk[i] > 1.0;
  }
  CHECK(raised);
}

TEST_CASE("environments from grid files") {
  const auto dir = std::filesystem::temp_directory_path() / "figop_env_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "g.txt";
  {
    std::ofstream f(path);
    f << "5 3 0.5\n#####\n#.?.#\n#####\n";
  }
  // '?' separates the two free cells once unknown becomes occupied.
  CHECK_THROWS_AS(load_environment(path), ParameterError);
  {
    std::ofstream f(path);
    f << "5 3 0.5\n#####\n#...#\n#####\n";
  }
  const auto env = load_environment(path);
  CHECK(env.start == GridCell{2, 1});
  CHECK(env.free_area == doctest::Approx(0.75));
  std::filesystem::remove_all(dir);
}
