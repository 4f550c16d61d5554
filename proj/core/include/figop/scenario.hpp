#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "figop/environment.hpp"
#include "figop/simulator.hpp"

namespace figop {

struct EnvironmentSpec {
  std::string kind = "room";  // maze | subway | junction | cross | room | file
  int maze_width = 20;
  int maze_height = 20;
  MazeOptions maze;
  int subway_rooms = 8;
  double cross_arm = 15.0;
  double cross_width = 2.5;
  double room_width = 10.0;
  double room_height = 10.0;
  std::filesystem::path file;

  // Generated kinds use `seed`; fixed layouts ignore it.
  Environment build(std::uint64_t seed) const;
};

// One experiment: an environment family, a mission template, the planners to
// compare and how many seeded repetitions to run. Run i uses seed_base + i for
// both the environment and the mission's random streams.
struct Scenario {
  std::string name = "scenario";
  EnvironmentSpec environment;
  MissionConfig mission;
  std::vector<PlannerKind> planners{PlannerKind::figop};
  // Per-planner key/value overrides of mission settings, in file order.
  std::map<PlannerKind, std::vector<std::pair<std::string, std::string>>> overrides;
  int repetitions = 1;
  std::int64_t seed_base = 0;
  double horizon_s = -1.0;       // fixed horizon for coverage; < 0 means mission_time
  double heading_window = -1.0;  // s; < 0 means mission_time
  double curve_step = 10.0;      // s between coverage-curve samples

  void validate() const;
  std::uint64_t seed_for_run(int run) const { return static_cast<std::uint64_t>(seed_base + run); }
  MissionConfig mission_for(PlannerKind planner, int run) const;
  double horizon() const { return horizon_s < 0.0 ? mission.mission_time : horizon_s; }
  double window() const { return heading_window < 0.0 ? mission.mission_time : heading_window; }
};

// Applies one mission-level key. Returns false if the key is not a mission
// setting; throws ParameterError for malformed values.
bool apply_mission_setting(MissionConfig& cfg, const std::string& key, const std::string& value);
// Applies any scenario key (scenario, environment or mission level).
void apply_scenario_setting(Scenario& sc, const std::string& key, const std::string& value);

// Flat "key = value" text. '#' starts a comment. A "[planner.NAME]" header
// starts a section whose keys override mission settings for that planner only.
// Errors are ParseError with the offending line and column.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace figop
