#include "figop/scenario.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "figop/errors.hpp"

namespace figop {

namespace {

class UnknownKey : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) throw ParameterError(key + ": expected a number, got '" + v + "'");
  return out;
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  std::int64_t out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) throw ParameterError(key + ": expected an integer, got '" + v + "'");
  return out;
}

std::vector<PlannerKind> to_planners(const std::string& v) {
  std::vector<PlannerKind> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(planner_from_string(item));
  }
  if (out.empty()) throw ParameterError("planners: list is empty");
  return out;
}

}  // namespace

Environment EnvironmentSpec::build(std::uint64_t seed) const {
  if (kind == "maze") return generate_maze(seed, maze_width, maze_height, maze);
  if (kind == "subway") return generate_subway(seed, subway_rooms);
  if (kind == "junction") return generate_junction(seed);
  if (kind == "cross") return generate_cross(cross_arm, cross_width);
  if (kind == "room") return generate_room(room_width, room_height);
  if (kind == "file") return load_environment(file);
  throw ParameterError("unknown environment kind '" + kind + "'");
}

void Scenario::validate() const {
  if (repetitions < 1) throw ParameterError("repetitions must be >= 1");
  if (planners.empty()) throw ParameterError("at least one planner is required");
  if (!(curve_step > 0.0)) throw ParameterError("curve_step must be > 0");
  mission.validate();
  for (PlannerKind p : planners) mission_for(p, 0).validate();
}

MissionConfig Scenario::mission_for(PlannerKind planner, int run) const {
  MissionConfig cfg = mission;
  cfg.planner = planner;
  cfg.rng_seed = seed_for_run(run);
  if (const auto it = overrides.find(planner); it != overrides.end()) {
    for (const auto& [k, v] : it->second) {
      if (!apply_mission_setting(cfg, k, v)) throw ParameterError("'" + k + "' cannot be overridden per planner");
    }
  }
  return cfg;
}

bool apply_mission_setting(MissionConfig& cfg, const std::string& key, const std::string& value) {
  auto num = [&] { return to_double(key, value); };
  auto integer = [&] { return to_int(key, value); };
  if (key == "mission_time") cfg.mission_time = num();
  else if (key == "replan_period") cfg.replan_period = num();
  else if (key == "speed") cfg.speed = num();
  else if (key == "window_half_extent") cfg.window_half_extent = num();
  else if (key == "sense_interval") cfg.sense_interval = num();
  else if (key == "breadcrumb_spacing") cfg.breadcrumb_spacing = num();
  else if (key == "breadcrumb_link_radius") cfg.breadcrumb_link_radius = num();
  else if (key == "frontier_node_radius") cfg.frontier_node_radius = num();
  else if (key == "cluster.eps") cfg.cluster_eps = num();
  else if (key == "cluster.min_pts") cfg.cluster_min_pts = static_cast<int>(integer());
  else if (key == "figop.k1") cfg.frontload.k1 = num();
  else if (key == "figop.k2") cfg.frontload.k2 = num();
  else if (key == "figop.k3") cfg.frontload.k3 = num();
  else if (key == "exp.gamma") cfg.exp_discount.gamma = num();
  else if (key == "exp.k") cfg.exp_discount.k = num();
  else if (key == "sensor.r_sense") cfg.sensor.r_sense = num();
  else if (key == "sensor.long_range") cfg.sensor.long_range = num();
  else if (key == "sensor.rays") cfg.sensor.rays_per_scan = static_cast<int>(integer());
  else if (key == "ig.depth_boost") cfg.info_gain.depth_boost = num();
  else if (key == "ig.association_cells") cfg.info_gain.association_cells = static_cast<int>(integer());
  else if (key == "noise.sigma") cfg.risk_noise.sigma = num();
  else if (key == "noise.period") cfg.risk_noise.period = num();
  else if (key == "gls.max_iterations") cfg.gls.max_iterations = static_cast<int>(integer());
  else if (key == "gls.lambda") cfg.gls.lambda_coefficient = num();
  else if (key == "gls.restart_after") cfg.gls.restart_after = static_cast<int>(integer());
  else if (key == "solver_time_limit") cfg.solver_time_limit = num();
  else return false;
  return true;
}

void apply_scenario_setting(Scenario& sc, const std::string& key, const std::string& value) {
  auto num = [&] { return to_double(key, value); };
  auto integer = [&] { return to_int(key, value); };
  auto& env = sc.environment;
  if (key == "name") sc.name = value;
  else if (key == "planners") sc.planners = to_planners(value);
  else if (key == "repetitions") sc.repetitions = static_cast<int>(integer());
  else if (key == "seed_base") sc.seed_base = integer();
  else if (key == "horizon_s") sc.horizon_s = num();
  else if (key == "heading_window") sc.heading_window = num();
  else if (key == "curve_step") sc.curve_step = num();
  else if (key == "environment") {
    static const std::set<std::string> kinds{"maze", "subway", "junction", "cross", "room", "file"};
    if (!kinds.count(value)) throw ParameterError("unknown environment kind '" + value + "'");
    env.kind = value;
  }
  else if (key == "maze.width") env.maze_width = static_cast<int>(integer());
  else if (key == "maze.height") env.maze_height = static_cast<int>(integer());
  else if (key == "maze.corridor_width") env.maze.corridor_width = num();
  else if (key == "maze.wall_thickness") env.maze.wall_thickness = num();
  else if (key == "maze.loop_fraction") env.maze.loop_fraction = num();
  else if (key == "subway.rooms") env.subway_rooms = static_cast<int>(integer());
  else if (key == "cross.arm_length") env.cross_arm = num();
  else if (key == "cross.corridor_width") env.cross_width = num();
  else if (key == "room.width") env.room_width = num();
  else if (key == "room.height") env.room_height = num();
  else if (key == "file.path") env.file = value;
  else if (!apply_mission_setting(sc.mission, key, value)) throw UnknownKey("unknown key '" + key + "'");
  if (sc.repetitions < 1) throw ParameterError("repetitions must be >= 1");
}

Scenario parse_scenario(std::istream& in) {
  Scenario sc;
  std::optional<PlannerKind> section;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const int col = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    if (body.front() == '[') {
      if (body.back() != ']' || body.rfind("[planner.", 0) != 0) {
        throw ParseError("expected a [planner.NAME] section header", line_no, col);
      }
      try {
        section = planner_from_string(body.substr(9, body.size() - 10));
      } catch (const ParameterError& e) {
        throw ParseError(e.what(), line_no, col + 9);
      }
      sc.overrides[*section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no, col);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", line_no, col);
    const auto value_start = line.find_first_not_of(" \t", eq + 1);
    const int value_col = static_cast<int>(value_start == std::string::npos ? eq + 1 : value_start) + 1;
    try {
      if (section) {
        MissionConfig probe;
        if (!apply_mission_setting(probe, key, value)) {
          throw ParameterError("'" + key + "' is not a mission setting and cannot appear in a planner section");
        }
        sc.overrides[*section].emplace_back(key, value);
      } else {
        apply_scenario_setting(sc, key, value);
      }
    } catch (const UnknownKey& e) {
      throw ParseError(e.what(), line_no, col);
    } catch (const ParameterError& e) {
      throw ParseError(e.what(), line_no, value_col);
    }
  }
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path.string());
  Scenario sc = parse_scenario(in);
  // Relative environment files resolve against the scenario's directory.
  if (sc.environment.kind == "file" && sc.environment.file.is_relative()) {
    sc.environment.file = path.parent_path() / sc.environment.file;
  }
  return sc;
}

}  // namespace figop
