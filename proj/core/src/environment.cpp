#include "figop/environment.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>

#include "figop/errors.hpp"

namespace figop {

namespace {

constexpr int kDx8[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy8[8] = {0, 0, 1, -1, 1, -1, 1, -1};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double snap(double v, double res) { return std::round(v / res) * res; }

OccupancyGrid blank_grid(int width, int height, double resolution) {
  OccupancyGrid g;
  g.width = width;
  g.height = height;
  g.resolution = resolution;
  g.cells.assign(static_cast<std::size_t>(width) * height, Occupancy::occupied);
  return g;
}

// Marks every cell whose center lies inside the rectangle as free.
void carve(OccupancyGrid& g, const Room& r) {
  const double res = g.resolution;
  const int x0 = std::max(0, static_cast<int>(std::ceil(r.x0 / res - 0.5)));
  const int y0 = std::max(0, static_cast<int>(std::ceil(r.y0 / res - 0.5)));
  const int x1 = std::min(g.width - 1, static_cast<int>(std::floor(r.x1 / res - 0.5 - 1e-9)));
  const int y1 = std::min(g.height - 1, static_cast<int>(std::floor(r.y1 / res - 0.5 - 1e-9)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) g.at(x, y) = Occupancy::free;
  }
}

Environment finish(OccupancyGrid grid, GridCell start, std::string descriptor) {
  Environment env;
  env.truth = std::move(grid);
  env.start = start;
  env.descriptor = std::move(descriptor);
  env.risk.assign(env.truth.cells.size(), 1.0);
  std::size_t free_cells = 0;
  for (auto o : env.truth.cells) free_cells += o == Occupancy::free ? 1 : 0;
  env.free_area = static_cast<double>(free_cells) * env.truth.resolution * env.truth.resolution;
  if (!env.is_free(start)) throw ParameterError("environment start cell is not free");
  if (reachable_free_cells(env) != free_cells) {
    throw ParameterError("environment free space is not a single connected component");
  }
  return env;
}

}  // namespace

std::size_t reachable_free_cells(const Environment& env) {
  const auto& g = env.truth;
  if (!env.is_free(env.start)) return 0;
  std::vector<char> seen(g.cells.size(), 0);
  std::deque<GridCell> queue{env.start};
  seen[static_cast<std::size_t>(env.start.y) * g.width + env.start.x] = 1;
  std::size_t count = 0;
  while (!queue.empty()) {
    const GridCell c = queue.front();
    queue.pop_front();
    ++count;
    for (int k = 0; k < 8; ++k) {
      const GridCell n{c.x + kDx8[k], c.y + kDy8[k]};
      if (!env.is_free(n)) continue;
      auto& s = seen[static_cast<std::size_t>(n.y) * g.width + n.x];
      if (!s) {
        s = 1;
        queue.push_back(n);
      }
    }
  }
  return count;
}

MazeLattice maze_lattice(std::uint64_t seed, int width, int height, double loop_fraction) {
  if (width <= 0 || height <= 0) throw ParameterError("maze lattice dimensions must be positive");
  if (loop_fraction < 0.0 || loop_fraction > 1.0) throw ParameterError("loop fraction must lie in [0, 1]");
  constexpr int dx[4] = {1, 0, -1, 0};
  constexpr int dy[4] = {0, 1, 0, -1};
  MazeLattice lat;
  lat.width = width;
  lat.height = height;
  lat.open.assign(static_cast<std::size_t>(width) * height, 0);
  auto idx = [&](int x, int y) { return static_cast<std::size_t>(y) * width + x; };

  std::mt19937_64 rng(seed);
  std::vector<char> visited(lat.open.size(), 0);
  std::vector<std::pair<int, int>> stack{{0, 0}};
  visited[0] = 1;
  while (!stack.empty()) {
    const auto [x, y] = stack.back();
    int options[4];
    int count = 0;
    for (int d = 0; d < 4; ++d) {
      const int nx = x + dx[d];
      const int ny = y + dy[d];
      if (nx >= 0 && ny >= 0 && nx < width && ny < height && !visited[idx(nx, ny)]) options[count++] = d;
    }
    if (count == 0) {
      stack.pop_back();
      continue;
    }
    const int d = options[uniform_int(rng, 0, count - 1)];
    const int nx = x + dx[d];
    const int ny = y + dy[d];
    lat.open[idx(x, y)] |= static_cast<std::uint8_t>(1u << d);
    lat.open[idx(nx, ny)] |= static_cast<std::uint8_t>(1u << ((d + 2) % 4));
    visited[idx(nx, ny)] = 1;
    stack.emplace_back(nx, ny);
  }

  if (loop_fraction > 0.0) {
    std::bernoulli_distribution knock(loop_fraction);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        for (int d : {0, 1}) {
          const int nx = x + dx[d];
          const int ny = y + dy[d];
          if (nx >= width || ny >= height || (lat.open[idx(x, y)] & (1u << d))) continue;
          if (!knock(rng)) continue;
          lat.open[idx(x, y)] |= static_cast<std::uint8_t>(1u << d);
          lat.open[idx(nx, ny)] |= static_cast<std::uint8_t>(1u << ((d + 2) % 4));
        }
      }
    }
  }
  return lat;
}

Environment generate_maze(std::uint64_t seed, int width, int height, const MazeOptions& options) {
  if (width <= 0 || height <= 0) throw ParameterError("maze dimensions must be positive");
  if (!(options.corridor_width > 0.0) || !(options.wall_thickness > 0.0) || !(options.resolution > 0.0)) {
    throw ParameterError("maze corridor width, wall thickness and resolution must be positive");
  }
  const MazeLattice lat = maze_lattice(seed, width, height, options.loop_fraction);
  const double res = options.resolution;
  const int c = std::max(1, static_cast<int>(std::lround(options.corridor_width / res)));
  const int w = std::max(1, static_cast<int>(std::lround(options.wall_thickness / res)));
  const int pitch = c + w;
  OccupancyGrid g = blank_grid(width * pitch + w, height * pitch + w, res);

  for (int ly = 0; ly < height; ++ly) {
    for (int lx = 0; lx < width; ++lx) {
      const int x0 = w + lx * pitch;
      const int y0 = w + ly * pitch;
      const std::uint8_t open = lat.open[static_cast<std::size_t>(ly) * width + lx];
      const int x_end = x0 + c + ((open & 1u) ? w : 0);
      const int y_end = y0 + c + ((open & 2u) ? w : 0);
      for (int y = y0; y < y0 + c; ++y) {
        for (int x = x0; x < x_end; ++x) g.at(x, y) = Occupancy::free;
      }
      for (int y = y0; y < y_end; ++y) {
        for (int x = x0; x < x0 + c; ++x) g.at(x, y) = Occupancy::free;
      }
    }
  }
  const int sx = width / 2;
  const int sy = height / 2;
  const GridCell start{w + sx * pitch + c / 2, w + sy * pitch + c / 2};
  std::ostringstream desc;
  desc << "maze(seed=" << seed << ", " << width << "x" << height << ")";
  Environment env = finish(std::move(g), start, desc.str());
  apply_risk_patches(env, seed ^ 0x9e3779b97f4a7c15ULL);
  return env;
}

Environment generate_subway(std::uint64_t seed, int room_count, SubwayLayout* layout_out) {
  if (room_count < 2) throw ParameterError("a subway layout needs at least 2 rooms");
  constexpr double res = 0.5;
  constexpr double gap = 6.0;
  constexpr double margin = 2.0;
  std::mt19937_64 rng(seed);
  SubwayLayout layout;

  double side = 40.0 * std::sqrt(static_cast<double>(room_count)) + 30.0;
  int tries = 0;
  while (static_cast<int>(layout.rooms.size()) < room_count) {
    if (++tries > 2000) {
      side *= 1.1;
      tries = 0;
    }
    const double w = snap(uniform(rng, 8.0, 30.0), res);
    const double h = snap(uniform(rng, 8.0, 30.0), res);
    const double x0 = snap(uniform(rng, margin, side - w - margin), res);
    const double y0 = snap(uniform(rng, margin, side - h - margin), res);
    const Room cand{x0, y0, x0 + w, y0 + h};
    const bool clash = std::any_of(layout.rooms.begin(), layout.rooms.end(), [&](const Room& r) {
      return cand.x0 < r.x1 + gap && r.x0 < cand.x1 + gap && cand.y0 < r.y1 + gap && r.y0 < cand.y1 + gap;
    });
    if (!clash) layout.rooms.push_back(cand);
  }

  // Prim's MST over room centers.
  const std::size_t n = layout.rooms.size();
  auto center = [&](std::size_t i) {
    const Room& r = layout.rooms[i];
    return Vec2{snap(0.5 * (r.x0 + r.x1), res), snap(0.5 * (r.y0 + r.y1), res)};
  };
  std::vector<char> in_tree(n, 0);
  in_tree[0] = 1;
  for (std::size_t added = 1; added < n; ++added) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0;
    std::size_t bb = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (!in_tree[a]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (in_tree[b]) continue;
        const double d = distance(center(a), center(b));
        if (d < best) {
          best = d;
          ba = a;
          bb = b;
        }
      }
    }
    in_tree[bb] = 1;
    const Vec2 ca = center(ba);
    const Vec2 cb = center(bb);
    const double hw = snap(uniform(rng, 2.0, 4.0), res) / 2.0;
    const bool horizontal_first = std::bernoulli_distribution(0.5)(rng);
    const Vec2 corner = horizontal_first ? Vec2{cb.x, ca.y} : Vec2{ca.x, cb.y};
    auto strip = [&](Vec2 p, Vec2 q) {
      return Room{std::min(p.x, q.x) - hw, std::min(p.y, q.y) - hw, std::max(p.x, q.x) + hw,
                  std::max(p.y, q.y) + hw};
    };
    layout.corridors.push_back(strip(ca, corner));
    layout.corridors.push_back(strip(corner, cb));
  }

  double max_x = 0.0;
  double max_y = 0.0;
  for (const auto* list : {&layout.rooms, &layout.corridors}) {
    for (const Room& r : *list) {
      max_x = std::max(max_x, r.x1);
      max_y = std::max(max_y, r.y1);
    }
  }
  OccupancyGrid g = blank_grid(static_cast<int>(std::ceil((max_x + margin) / res)),
                               static_cast<int>(std::ceil((max_y + margin) / res)), res);
  for (const Room& r : layout.rooms) carve(g, r);
  for (const Room& r : layout.corridors) carve(g, r);

  const GridCell start = cell_of(center(0), res);
  std::ostringstream desc;
  desc << "subway(seed=" << seed << ", rooms=" << room_count << ")";
  Environment env = finish(std::move(g), start, desc.str());
  apply_risk_patches(env, seed ^ 0x9e3779b97f4a7c15ULL);
  if (layout_out) *layout_out = std::move(layout);
  return env;
}

Environment generate_junction(std::uint64_t seed) {
  constexpr double res = 0.5;
  constexpr double hub = 10.0;
  constexpr double extent = 130.0;
  std::mt19937_64 rng(seed);
  const double cx = extent / 2.0;
  const double cy = extent / 2.0;
  std::vector<Room> parts;
  parts.push_back({cx - hub / 2, cy - hub / 2, cx + hub / 2, cy + hub / 2});

  // One arm per compass direction, offset along the hub side, each ending in
  // a room of its own.
  for (int dir = 0; dir < 4; ++dir) {
    const double width = snap(uniform(rng, 2.0, 5.0), res);
    const double length = snap(uniform(rng, 15.0, 40.0), res);
    const double offset = snap(uniform(rng, -hub / 2 + width / 2, hub / 2 - width / 2), res);
    const double rw = snap(uniform(rng, 8.0, 16.0), res);
    const double rh = snap(uniform(rng, 8.0, 16.0), res);
    Room arm{};
    Room end{};
    switch (dir) {
      case 0:  // east
        arm = {cx + hub / 2, cy + offset - width / 2, cx + hub / 2 + length, cy + offset + width / 2};
        end = {arm.x1, cy + offset - rh / 2, arm.x1 + rw, cy + offset + rh / 2};
        break;
      case 1:  // north
        arm = {cx + offset - width / 2, cy + hub / 2, cx + offset + width / 2, cy + hub / 2 + length};
        end = {cx + offset - rw / 2, arm.y1, cx + offset + rw / 2, arm.y1 + rh};
        break;
      case 2:  // west
        arm = {cx - hub / 2 - length, cy + offset - width / 2, cx - hub / 2, cy + offset + width / 2};
        end = {arm.x0 - rw, cy + offset - rh / 2, arm.x0, cy + offset + rh / 2};
        break;
      default:  // south
        arm = {cx + offset - width / 2, cy - hub / 2 - length, cx + offset + width / 2, cy - hub / 2};
        end = {cx + offset - rw / 2, arm.y0 - rh, cx + offset + rw / 2, arm.y0};
        break;
    }
    parts.push_back(arm);
    parts.push_back(end);
  }
  const int cells = static_cast<int>(std::lround(extent / res));
  OccupancyGrid g = blank_grid(cells, cells, res);
  for (const Room& r : parts) carve(g, r);
  std::ostringstream desc;
  desc << "junction(seed=" << seed << ")";
  Environment env = finish(std::move(g), cell_of({cx, cy}, res), desc.str());
  apply_risk_patches(env, seed ^ 0x9e3779b97f4a7c15ULL);
  return env;
}

Environment generate_cross(double arm_length, double corridor_width, double resolution) {
  if (!(arm_length > 0.0) || !(corridor_width > 0.0) || !(resolution > 0.0)) {
    throw ParameterError("cross dimensions must be positive");
  }
  const int arm = std::max(1, static_cast<int>(std::lround(arm_length / resolution)));
  int wc = std::max(1, static_cast<int>(std::lround(corridor_width / resolution)));
  if (wc % 2 == 0) ++wc;  // odd width keeps the start cell on the axis of symmetry
  const int half = wc / 2;
  const int side = 2 * (arm + half) + 1 + 2;
  const int m = side / 2;
  OccupancyGrid g = blank_grid(side, side, resolution);
  for (int y = 1; y < side - 1; ++y) {
    for (int x = 1; x < side - 1; ++x) {
      if (std::abs(x - m) <= half || std::abs(y - m) <= half) g.at(x, y) = Occupancy::free;
    }
  }
  return finish(std::move(g), {m, m}, "cross");
}

Environment generate_room(double width, double height, double resolution) {
  if (!(width > 0.0) || !(height > 0.0) || !(resolution > 0.0)) throw ParameterError("room dimensions must be positive");
  const int w = std::max(1, static_cast<int>(std::lround(width / resolution)));
  const int h = std::max(1, static_cast<int>(std::lround(height / resolution)));
  OccupancyGrid g = blank_grid(w + 2, h + 2, resolution);
  for (int y = 1; y <= h; ++y) {
    for (int x = 1; x <= w; ++x) g.at(x, y) = Occupancy::free;
  }
  return finish(std::move(g), {1 + w / 2, 1 + h / 2}, "room");
}

Environment environment_from_grid(OccupancyGrid grid, std::string descriptor) {
  for (auto& o : grid.cells) {
    if (o == Occupancy::unknown) o = Occupancy::occupied;
  }
  std::optional<GridCell> start;
  double best = std::numeric_limits<double>::infinity();
  const double mx = (grid.width - 1) / 2.0;
  const double my = (grid.height - 1) / 2.0;
  for (int y = 0; y < grid.height; ++y) {
    for (int x = 0; x < grid.width; ++x) {
      if (grid.at(x, y) != Occupancy::free) continue;
      const double d = std::hypot(x - mx, y - my);
      if (d < best) {
        best = d;
        start = GridCell{x, y};
      }
    }
  }
  if (!start) throw ParameterError("environment has no free cell");
  return finish(std::move(grid), *start, std::move(descriptor));
}

Environment load_environment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open environment file " + path.string());
  return environment_from_grid(read_grid(in), "file(" + path.string() + ")");
}

void apply_risk_patches(Environment& env, std::uint64_t seed, double patches_per_100m2, double max_amplitude) {
  std::mt19937_64 rng(seed);
  const int count = static_cast<int>(std::lround(patches_per_100m2 * env.free_area / 100.0));
  const auto ext = env.extent();
  const double res = env.resolution();
  for (int k = 0; k < count; ++k) {
    const Vec2 c{uniform(rng, 0.0, ext.x), uniform(rng, 0.0, ext.y)};
    const double radius = uniform(rng, 2.0, 6.0);
    const double amp = uniform(rng, 0.5, std::max(0.5, max_amplitude));
    const GridCell lo = cell_of({c.x - radius, c.y - radius}, res);
    const GridCell hi = cell_of({c.x + radius, c.y + radius}, res);
    for (int y = std::max(0, lo.y); y <= std::min(env.truth.height - 1, hi.y); ++y) {
      for (int x = std::max(0, lo.x); x <= std::min(env.truth.width - 1, hi.x); ++x) {
        const double d = distance(cell_center({x, y}, res), c);
        if (d >= radius) continue;
        double& r = env.risk[static_cast<std::size_t>(y) * env.truth.width + x];
        r = std::clamp(r + amp * (1.0 - d / radius), kMinRisk, kMaxRisk);
      }
    }
  }
}

}  // namespace figop
