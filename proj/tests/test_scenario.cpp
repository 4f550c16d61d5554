#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "figop/errors.hpp"
#include "figop/scenario.hpp"

using namespace figop;

namespace {
Scenario parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in);
}
}  // namespace

TEST_CASE("scenario keys, comments and planner overrides") {
  const auto sc = parse(R"(# comment line
name = demo   # trailing comment
environment = maze
maze.width = 5
maze.height = 4
maze.corridor_width = 2.5
planners = figop, op, greedy
repetitions = 3
seed_base = 10
mission_time = 600
horizon_s = 300
figop.k2 = 40
noise.sigma = 0.2

[planner.op]
replan_period = 2
)");
  CHECK(sc.name == "demo");
  CHECK(sc.environment.kind == "maze");
  CHECK(sc.environment.maze_width == 5);
  CHECK(sc.environment.maze.corridor_width == 2.5);
  CHECK(sc.planners == std::vector<PlannerKind>{PlannerKind::figop, PlannerKind::op, PlannerKind::greedy});
  CHECK(sc.repetitions == 3);
  CHECK(sc.seed_for_run(2) == 12u);
  CHECK(sc.horizon() == 300.0);
  CHECK(sc.window() == 600.0);
  CHECK(sc.mission.frontload.k2 == 40.0);
  CHECK(sc.mission.risk_noise.sigma == 0.2);

  const auto op = sc.mission_for(PlannerKind::op, 1);
  CHECK(op.replan_period == 2.0);
  CHECK(op.planner == PlannerKind::op);
  CHECK(op.rng_seed == 11u);
  CHECK(sc.mission_for(PlannerKind::figop, 1).replan_period == sc.mission.replan_period);
}

TEST_CASE("scenario errors carry line and column") {
  auto failure = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return std::pair{e.line(), e.column()};
    }
    FAIL("expected a ParseError");
    return std::pair{0, 0};
  };
  CHECK(failure("name = a\nmission_time = soon\n") == std::pair{2, 16});
  CHECK(failure("name = a\n\n  bogus_key = 1\n") == std::pair{3, 3});
  CHECK(failure("environment = moon\n") == std::pair{1, 15});
  CHECK(failure("just words\n").first == 1);
  CHECK(failure("[planner.astar]\n").first == 1);
  CHECK(failure("[planner.op]\nrepetitions = 2\n").first == 2);
  CHECK(failure("planners = \n").first == 1);
  CHECK(failure("repetitions = 0\n").first == 1);
}

TEST_CASE("environment specs build the requested layout") {
  EnvironmentSpec spec;
  spec.kind = "room";
  spec.room_width = 8;
  spec.room_height = 6;
  CHECK(spec.build(0).free_area == doctest::Approx(48.0));
  spec.kind = "subway";
  spec.subway_rooms = 3;
  CHECK(spec.build(4).truth.cells == spec.build(4).truth.cells);
  CHECK(spec.build(4).truth.cells != spec.build(5).truth.cells);
}

TEST_CASE("file environments resolve relative to the scenario") {
  const auto dir = std::filesystem::temp_directory_path() / "figop_scn_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream g(dir / "map.txt");
    g << "4 3 0.5\n####\n#..#\n####\n";
    std::ofstream s(dir / "s.scn");
    s << "environment = file\nfile.path = map.txt\n";
  }
  const auto sc = load_scenario(dir / "s.scn");
  CHECK(sc.environment.build(0).free_area == doctest::Approx(0.5));
  std::filesystem::remove_all(dir);
}
