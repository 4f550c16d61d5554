#include "figop/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "figop/errors.hpp"
#include "figop/graph_builder.hpp"

namespace figop {

namespace {

constexpr double kEps = 1e-9;
constexpr int kEdgeMargin = 2;  // cells at the window rim left alone by the frontier refresh

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

MetricMap covering_map(const Environment& env) {
  const Vec2 ext = env.extent();
  const double half = 0.5 * std::max(ext.x, ext.y) + 1.0;
  return MetricMap({0.5 * ext.x, 0.5 * ext.y}, half, env.resolution());
}

}  // namespace

std::string_view to_string(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::figop: return "figop";
    case PlannerKind::op: return "op";
    case PlannerKind::greedy: return "greedy";
    case PlannerKind::figlf: return "figlf";
    case PlannerKind::exp: return "exp";
  }
  return "?";
}

PlannerKind planner_from_string(std::string_view name) {
  for (auto k : {PlannerKind::figop, PlannerKind::op, PlannerKind::greedy, PlannerKind::figlf, PlannerKind::exp}) {
    if (to_string(k) == name) return k;
  }
  throw ParameterError("unknown planner '" + std::string(name) + "' (expected figop, op, greedy, figlf or exp)");
}

void MissionConfig::validate() const {
  // Zero mission time is allowed and yields just the initial scan.
  if (!(mission_time >= 0.0) || !std::isfinite(mission_time)) throw ParameterError("mission_time must be >= 0");
  if (!(replan_period > 0.0)) throw ParameterError("replan_period must be > 0");
  if (!(speed > 0.0)) throw ParameterError("speed must be > 0");
  if (!(sense_interval > 0.0)) throw ParameterError("sense_interval must be > 0");
  if (!(breadcrumb_spacing > 0.0) || !(breadcrumb_link_radius > 0.0)) {
    throw ParameterError("breadcrumb spacing and link radius must be > 0");
  }
  if (!(frontier_node_radius > 0.0)) throw ParameterError("frontier_node_radius must be > 0");
  if (!(window_half_extent > sensor.r_sense)) throw ParameterError("the metric window must enclose the sensor range");
  if (!(risk_noise.sigma >= 0.0) || !(risk_noise.period > 0.0)) {
    throw ParameterError("risk noise needs sigma >= 0 and period > 0");
  }
  if (!(cluster_eps > 0.0) || cluster_min_pts < 1) throw ParameterError("invalid clustering parameters");
  if (gls.max_iterations < 1) throw ParameterError("gls max_iterations must be >= 1");
  if (!(solver_time_limit > 0.0)) throw ParameterError("solver_time_limit must be > 0");
  sensor.validate();
  frontload.validate();
  exp_discount.validate();
}

ObjectiveKind MissionConfig::objective() const {
  switch (planner) {
    case PlannerKind::figop:
    case PlannerKind::figlf: return frontload;
    case PlannerKind::exp: return exp_discount;
    case PlannerKind::op:
    case PlannerKind::greedy: return OpObjective{};
  }
  return OpObjective{};
}

void write_coverage_csv(std::ostream& os, const CoverageLog& log) {
  os << "t_s,coverage_m2,odometer_m,heading_rad,episode\n";
  char buf[160];
  for (const auto& s : log.samples) {
    std::snprintf(buf, sizeof buf, "%.3f,%.4f,%.4f,%.6f,%lld\n", s.t, s.coverage, s.odometer, s.heading,
                  static_cast<long long>(s.episode));
    os << buf;
  }
}

MetricMap inject_risk_noise(const MetricMap& map, double sigma, std::mt19937_64& rng) {
  if (!(sigma >= 0.0)) throw ParameterError("noise sigma must be >= 0");
  MetricMap out = map;
  if (sigma == 0.0) return out;
  std::normal_distribution<double> normal(0.0, sigma);
  for (auto& cell : out.cells_mut()) {
    const double g = normal(rng);
    if (cell.occupancy == Occupancy::free) cell.risk = std::clamp(cell.risk * std::exp(g), kMinRisk, kMaxRisk);
  }
  return out;
}

std::vector<double> heading_sensitivity(const CoverageLog& log, double window) {
  std::vector<const CoverageSample*> firsts;
  std::int64_t last = 0;
  for (const auto& s : log.samples) {
    if (s.episode >= 1 && s.episode != last) {
      firsts.push_back(&s);
      last = s.episode;
    }
  }
  std::vector<double> deltas;
  if (firsts.size() < 2) return deltas;
  const double t_end = firsts.front()->t + window;
  for (std::size_t i = 1; i < firsts.size() && firsts[i]->t <= t_end + kEps; ++i) {
    const double a = firsts[i - 1]->heading;
    const double b = firsts[i]->heading;
    if (std::isnan(a) || std::isnan(b)) continue;
    deltas.push_back(angle_delta(a, b));
  }
  return deltas;
}

namespace {

// Splits cells into 8-connected groups, keeping the input order inside each group.
std::vector<std::vector<GridCell>> connected_runs(const std::vector<GridCell>& cells) {
  std::vector<int> group(cells.size(), -1);
  int groups = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (group[i] >= 0) continue;
    group[i] = groups;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < cells.size(); ++b) {
        if (group[b] < 0 && std::abs(cells[a].x - cells[b].x) <= 1 && std::abs(cells[a].y - cells[b].y) <= 1) {
          group[b] = groups;
          stack.push_back(b);
        }
      }
    }
    ++groups;
  }
  std::vector<std::vector<GridCell>> out(static_cast<std::size_t>(groups));
  for (std::size_t i = 0; i < cells.size(); ++i) out[static_cast<std::size_t>(group[i])].push_back(cells[i]);
  return out;
}

}  // namespace

ScanResult cast_scan(const Environment& env, GridCell origin, const SensorModel& sensor) {
  sensor.validate();
  const double res = env.resolution();
  const Vec2 p0 = cell_center(origin, res);
  std::unordered_set<GridCell> free_seen;
  std::unordered_set<GridCell> occ_seen;
  ScanResult out;
  free_seen.insert(origin);

  for (int k = 0; k < sensor.rays_per_scan; ++k) {
    const double theta = 2.0 * kPi * k / sensor.rays_per_scan;
    const double dx = std::cos(theta);
    const double dy = std::sin(theta);
    // Grid traversal (Amanatides-Woo) in cell units.
    int cx = origin.x;
    int cy = origin.y;
    const int sx = dx > 0 ? 1 : -1;
    const int sy = dy > 0 ? 1 : -1;
    const double inv_dx = std::abs(dx) > 1e-12 ? 1.0 / std::abs(dx) : std::numeric_limits<double>::infinity();
    const double inv_dy = std::abs(dy) > 1e-12 ? 1.0 / std::abs(dy) : std::numeric_limits<double>::infinity();
    double t_max_x = 0.5 * res * inv_dx;
    double t_max_y = 0.5 * res * inv_dy;
    const double t_dx = res * inv_dx;
    const double t_dy = res * inv_dy;
    while (true) {
      double t_entry;
      if (t_max_x < t_max_y) {
        t_entry = t_max_x;
        t_max_x += t_dx;
        cx += sx;
      } else {
        t_entry = t_max_y;
        t_max_y += t_dy;
        cy += sy;
      }
      if (t_entry >= sensor.long_range) break;
      const GridCell c{cx, cy};
      const double d = distance(cell_center(c, res), p0);
      const bool in_range = d <= sensor.r_sense;
      if (!env.is_free(c)) {
        if (in_range && env.truth.in_bounds(c.x, c.y)) occ_seen.insert(c);
        break;
      }
      if (in_range) {
        free_seen.insert(c);
      } else if (d <= sensor.long_range) {
        out.long_range.insert(c);
      }
    }
  }
  // Wall cells bordering observed free space are part of the beam footprint,
  // including concave corners that no single ray can reach.
  for (const auto& c : free_seen) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const GridCell n{c.x + dx, c.y + dy};
        if (!env.is_free(n) && env.truth.in_bounds(n.x, n.y)) occ_seen.insert(n);
      }
    }
  }
  for (const auto& c : free_seen) out.long_range.erase(c);
  out.free_cells.assign(free_seen.begin(), free_seen.end());
  out.occupied_cells.assign(occ_seen.begin(), occ_seen.end());
  // Hash order is not portable; sort so callers see a stable order.
  std::sort(out.free_cells.begin(), out.free_cells.end());
  std::sort(out.occupied_cells.begin(), out.occupied_cells.end());
  return out;
}

Mission::Mission(const Environment& env, MissionConfig cfg)
    : env_(env),
      cfg_(std::move(cfg)),
      known_(covering_map(env)),
      window_(Vec2{}, cfg_.window_half_extent, env.resolution()),
      noise_rng_(splitmix64(cfg_.rng_seed ^ 0x6e6f697365ULL)) {
  cfg_.validate();
  if (!env.is_free(env.start)) throw ContractError("environment start cell is not free");
  robot_.cell = env.start;
  robot_.position = cell_center(env.start, env.resolution());
  robot_.speed = cfg_.speed;
  robot_.heading = std::numeric_limits<double>::quiet_NaN();
  last_breadcrumb_ = topo_.add_node(robot_.position, TopoKind::breadcrumb);
  last_breadcrumb_pos_ = robot_.position;
}

double Mission::coverage() const {
  const double res = env_.resolution();
  return static_cast<double>(known_free_) * res * res;
}

void Mission::sense() {
  const ScanResult scan = cast_scan(env_, robot_.cell, cfg_.sensor);
  auto learn = [&](GridCell c) {
    if (!known_.contains(c) || known_.at(c).occupancy != Occupancy::unknown) return;
    if (env_.is_free(c)) {
      known_.set(c, {Occupancy::free, env_.risk_at(c)});
      ++known_free_;
    } else {
      known_.set(c, {Occupancy::occupied, 1.0});
    }
    long_range_.erase(c);
  };
  for (const auto& c : scan.free_cells) learn(c);
  for (const auto& c : scan.occupied_cells) learn(c);
  // The robot's own footprint: its 8 neighbours are always known.
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) learn({robot_.cell.x + dx, robot_.cell.y + dy});
  }
  for (const auto& c : scan.long_range) {
    if (known_.at(c).occupancy == Occupancy::unknown) long_range_.insert(c);
  }

  window_ = MetricMap(robot_.position, cfg_.window_half_extent, env_.resolution());
  auto cells = window_.cells_mut();
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = known_.at(window_.cell_at(i));

  drop_breadcrumb();
  refresh_frontier_nodes();
}

void Mission::link_to_breadcrumbs(TopoId node, GridCell cell, bool require_one) {
  const double res = env_.resolution();
  bool linked = false;
  for (const auto& [id, n] : topo_.nodes()) {
    if (id == node || n.kind != TopoKind::breadcrumb) continue;
    if (distance(n.position, cell_center(cell, res)) > cfg_.breadcrumb_link_radius) continue;
    const GridCell bc = cell_of(n.position, res);
    if (!window_.is_free(bc)) continue;
    const auto cost = metric_cost(window_, cell, bc);
    if (!cost) continue;
    topo_.add_edge(node, id, std::max(*cost, 1e-6));
    linked = true;
  }
  if (linked || !require_one) return;
  const auto field = metric_cost_field(window_, cell);
  double best = std::numeric_limits<double>::infinity();
  TopoId best_id = 0;
  for (const auto& [id, n] : topo_.nodes()) {
    if (id == node || n.kind != TopoKind::breadcrumb) continue;
    const GridCell bc = cell_of(n.position, res);
    if (!window_.contains(bc)) continue;
    const double c = field[window_.index_of(bc)];
    if (c < best) {
      best = c;
      best_id = id;
    }
  }
  if (std::isfinite(best)) topo_.add_edge(node, best_id, std::max(best, 1e-6));
}

void Mission::drop_breadcrumb() {
  if (distance(robot_.position, last_breadcrumb_pos_) < cfg_.breadcrumb_spacing - kEps) return;
  const TopoId id = topo_.add_node(robot_.position, TopoKind::breadcrumb);
  link_to_breadcrumbs(id, robot_.cell, true);
  last_breadcrumb_ = id;
  last_breadcrumb_pos_ = robot_.position;
}

void Mission::refresh_frontier_nodes() {
  const double res = env_.resolution();
  const GridCell o = window_.origin();
  const int side = window_.side_cells();
  auto inner = [&](GridCell c) {
    return c.x >= o.x + kEdgeMargin && c.y >= o.y + kEdgeMargin && c.x < o.x + side - kEdgeMargin &&
           c.y < o.y + side - kEdgeMargin;
  };

  // Per-cell gain: breadth of one cell times the sensing depth of its segment.
  std::vector<double> cell_gain(window_.cell_count(), 0.0);
  std::vector<char> is_frontier(window_.cell_count(), 0);
  const auto segments = detect_frontiers(window_);
  for (const auto& seg : segments) {
    const bool deep = associated_with_long_range(seg, window_, long_range_, cfg_.info_gain);
    const double g = res * cfg_.sensor.r_sense * (deep ? cfg_.info_gain.depth_boost : 1.0);
    for (const auto& c : seg) {
      if (!inner(c)) continue;
      const std::size_t i = window_.index_of(c);
      is_frontier[i] = 1;
      cell_gain[i] = g;
    }
  }

  struct Kept {
    TopoId id;
    Vec2 pos;
    double gain = 0.0;
  };
  std::vector<Kept> kept;
  for (TopoId id : topo_.ids_of_kind(TopoKind::frontier)) {
    const Vec2 p = topo_.node(id).position;
    const GridCell c = cell_of(p, res);
    if (!inner(c)) continue;
    if (!is_frontier[window_.index_of(c)]) {
      topo_.remove_node(id);
      gains_.erase(id);
    } else {
      kept.push_back({id, p});
    }
  }

  const double r = cfg_.frontier_node_radius;
  std::vector<char> unassigned(window_.cell_count(), 0);
  for (std::size_t i = 0; i < is_frontier.size(); ++i) {
    if (!is_frontier[i]) continue;
    const Vec2 p = cell_center(window_.cell_at(i), res);
    Kept* best = nullptr;
    double best_d = r + kEps;
    for (auto& k : kept) {
      const double d = distance(k.pos, p);
      if (d < best_d) {
        best_d = d;
        best = &k;
      }
    }
    if (best) {
      best->gain += cell_gain[i];
    } else {
      unassigned[i] = 1;
    }
  }
  for (const auto& k : kept) gains_[k.id] = k.gain;

  // Leftover cells form runs along their segment. Each run is cut into
  // contiguous chunks no longer than a node's diameter, and every chunk gets
  // a node at its cell nearest the chunk centroid.
  const std::size_t chunk_cap = static_cast<std::size_t>(std::floor(2.0 * r / res)) + 1;
  for (const auto& seg : segments) {
    std::vector<GridCell> run;
    for (const auto& c : seg) {
      if (inner(c) && unassigned[window_.index_of(c)]) run.push_back(c);
    }
    for (const auto& group : connected_runs(run)) {
      const std::size_t chunks = (group.size() + chunk_cap - 1) / chunk_cap;
      for (std::size_t k = 0; k < chunks; ++k) {
        const std::size_t lo = k * group.size() / chunks;
        const std::size_t hi = (k + 1) * group.size() / chunks;
        Vec2 centroid;
        double gain = 0.0;
        for (std::size_t j = lo; j < hi; ++j) {
          centroid = centroid + cell_center(group[j], res);
          gain += cell_gain[window_.index_of(group[j])];
        }
        centroid = centroid * (1.0 / static_cast<double>(hi - lo));
        GridCell at = group[lo];
        for (std::size_t j = lo; j < hi; ++j) {
          if (distance(cell_center(group[j], res), centroid) < distance(cell_center(at, res), centroid) - kEps) {
            at = group[j];
          }
        }
        const TopoId id = topo_.add_node(cell_center(at, res), TopoKind::frontier);
        gains_[id] = gain;
        link_to_breadcrumbs(id, at, true);
      }
    }
  }
}

bool Mission::target_still_valid() const {
  if (!target_) return false;
  // Targets outside the window are remembered frontiers; they stay valid until seen.
  return !window_.contains(*target_) || is_frontier_cell(window_, *target_);
}

bool Mission::plan() {
  const double budget = (cfg_.mission_time - robot_.elapsed) * cfg_.speed;
  if (budget <= kEps) {
    log_.end_reason = "mission time exhausted";
    return false;
  }
  const auto ids = topo_.ids_of_kind(TopoKind::frontier);
  if (ids.empty()) {
    log_.end_reason = "no frontiers remain";
    return false;
  }
  std::vector<TopoNode> nodes;
  std::vector<double> gains;
  nodes.reserve(ids.size());
  for (TopoId id : ids) {
    nodes.push_back(topo_.node(id));
    gains.push_back(gains_.at(id));
  }
  auto clusters = cluster_frontiers(nodes, gains, cfg_.cluster_eps, cfg_.cluster_min_pts);

  MetricMap noisy_storage = window_;
  const MetricMap* planning_map = &window_;
  if (cfg_.risk_noise.sigma > 0.0) {
    if (last_noise_draw_ < 0.0 || robot_.elapsed - last_noise_draw_ >= cfg_.risk_noise.period - kEps) {
      noise_draw_seed_ = noise_rng_();
      last_noise_draw_ = robot_.elapsed;
    }
    std::mt19937_64 draw(noise_draw_seed_);
    noisy_storage = inject_risk_noise(window_, cfg_.risk_noise.sigma, draw);
    planning_map = &noisy_storage;
  }
  attach_metric_cells(clusters, *planning_map, topo_);
  GraphBuildOptions opts;
  opts.force_topological = cfg_.planner == PlannerKind::figlf;
  FigOpGraph graph = build_figop_graph(robot_.position, clusters, *planning_map, topo_, opts);
  if (graph.non_root_count() == 0) {
    log_.end_reason = "all frontiers unreachable";
    return false;
  }
  if (on_plan) on_plan(PlanSnapshot{robot_.elapsed, episode_ + 1, graph, budget});

  const auto started = std::chrono::steady_clock::now();
  Solution sol;
  if (cfg_.planner == PlannerKind::greedy) {
    sol = solve_greedy(graph, budget, OpObjective{});
  } else {
    SolveRequest req;
    req.objective = objective();
    req.budget = budget;
    if (previous_) req.seed_path = seed_from_previous(*previous_, graph, budget);
    req.time_limit = cfg_.solver_time_limit;
    req.rng_seed = splitmix64(cfg_.rng_seed + static_cast<std::uint64_t>(episode_));
    req.config = cfg_.gls;
    sol = solve_gls(graph, req);
  }
  log_.solve_seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());

  if (sol.path.size() < 2) {
    log_.end_reason = "no frontier reachable within budget";
    return false;
  }
  const double res = env_.resolution();
  for (std::size_t k = 1; k < sol.path.size(); ++k) {
    const GridCell goal = cell_of(graph.nodes[sol.path[k]].position, res);
    if (goal == robot_.cell || !known_.is_free(goal)) continue;
    auto route = metric_route(known_, robot_.cell, goal);
    if (route.size() < 2) continue;
    route_ = std::move(route);
    route_pos_ = 0;
    target_ = goal;
    heading_ = heading(robot_.position, cell_center(goal, res));
    robot_.heading = heading_;
    ++episode_;
    last_plan_t_ = robot_.elapsed;
    previous_ = std::move(sol);
    has_plan_ = true;
    return true;
  }
  log_.end_reason = "planned frontiers unreachable on the known map";
  return false;
}

void Mission::record() {
  log_.samples.push_back({robot_.elapsed, coverage(), robot_.odometer,
                          has_plan_ ? heading_ : std::numeric_limits<double>::quiet_NaN(), episode_});
}

CoverageLog Mission::run() {
  const double res = env_.resolution();
  sense();
  bool alive = cfg_.mission_time > 0.0 && plan();
  record();
  while (alive) {
    double since = 0.0;
    bool moved = false;
    bool out_of_time = false;
    while (route_pos_ + 1 < route_.size()) {
      const Vec2 a = cell_center(route_[route_pos_], res);
      const Vec2 b = cell_center(route_[route_pos_ + 1], res);
      const double step = distance(a, b);
      if (robot_.elapsed + step / cfg_.speed > cfg_.mission_time + kEps) {
        out_of_time = true;
        break;
      }
      ++route_pos_;
      robot_.cell = route_[route_pos_];
      robot_.position = b;
      robot_.odometer += step;
      robot_.elapsed += step / cfg_.speed;
      since += step;
      moved = true;
      if (on_move) on_move(robot_);
      if (since >= cfg_.sense_interval - kEps) break;
    }
    if (out_of_time && !moved) break;
    if (!moved) {
      // Nothing to follow: wait one sensing interval in place.
      robot_.elapsed = std::min(cfg_.mission_time, robot_.elapsed + cfg_.sense_interval / cfg_.speed);
    }
    sense();
    const bool arrived = route_pos_ + 1 >= route_.size();
    const bool due = robot_.elapsed - last_plan_t_ >= cfg_.replan_period - kEps;
    if (robot_.elapsed >= cfg_.mission_time - kEps) {
      record();
      break;
    }
    if (arrived || due || !target_still_valid()) alive = plan();
    record();
  }
  if (log_.end_reason.empty()) log_.end_reason = "mission time exhausted";
  if (log_.samples.back().t < cfg_.mission_time) {
    CoverageSample last = log_.samples.back();
    last.t = cfg_.mission_time;
    log_.samples.push_back(last);
  }
  return log_;
}

CoverageLog run_mission(const Environment& env, const MissionConfig& cfg) { return Mission(env, cfg).run(); }

}  // namespace figop
