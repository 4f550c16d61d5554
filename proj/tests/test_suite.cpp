#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "figop/stats.hpp"
#include "figop/suite.hpp"

using namespace figop;
namespace fs = std::filesystem;

namespace {

Scenario tiny(int reps) {
  Scenario sc;
  sc.name = "tiny";
  sc.environment.kind = "subway";
  sc.environment.subway_rooms = 3;
  sc.planners = {PlannerKind::figop, PlannerKind::greedy};
  sc.repetitions = reps;
  sc.seed_base = 1;
  sc.mission.mission_time = 180;
  sc.horizon_s = 120;
  return sc;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const auto d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_CASE("coverage interpolation helpers") {
  CoverageLog log;
  log.samples = {{0, 10, 0, NAN, 0}, {10, 30, 10, 0, 1}, {20, 50, 20, 0, 1}};
  CHECK(coverage_at(log, 5) == doctest::Approx(20));
  CHECK(coverage_at(log, 100) == 50);
  CHECK(time_to_coverage(log, 40) == doctest::Approx(15));
  CHECK(time_to_coverage(log, 5) == 0.0);
  CHECK(std::isnan(time_to_coverage(log, 60)));
}

TEST_CASE("summary rows recompute from run rows") {
  const auto sc = tiny(3);
  const auto result = run_suite(sc, 2);
  REQUIRE(result.runs.size() == 6u);
  const auto dir = fresh_dir("figop_suite_test");
  const auto files = write_suite(result, dir);
  CHECK(files.size() == 6u + 2u);

  std::ifstream in(dir / "tiny_summary.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("row_type,planner,seed,", 0) == 0);
  std::map<std::string, std::vector<double>> rates;
  std::map<std::string, std::map<std::string, double>> agg;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() >= 5u);
    if (f[0] == "run") rates[f[1]].push_back(std::stod(f[4]));
    else agg[f[1]][f[0]] = std::stod(f[4]);
  }
  for (const auto& [planner, xs] : rates) {
    CHECK(xs.size() == 3u);
    CHECK(std::abs(agg[planner]["mean"] - stats::mean(xs)) < 1e-9);
    CHECK(std::abs(agg[planner]["std"] - stats::sample_std(xs)) < 1e-9);
  }
  fs::remove_all(dir);
}

TEST_CASE("suite output is byte identical across runs and worker counts") {
  const auto sc = tiny(2);
  const auto d1 = fresh_dir("figop_det_1");
  const auto d2 = fresh_dir("figop_det_2");
  const auto f1 = write_suite(run_suite(sc, 1), d1);
  const auto f2 = write_suite(run_suite(sc, 3), d2);
  REQUIRE(f1.size() == f2.size());
  for (std::size_t i = 0; i < f1.size(); ++i) {
    CHECK(f1[i].filename() == f2[i].filename());
    CHECK(slurp(f1[i]) == slurp(f2[i]));
  }
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("one repetition in a tiny room writes exactly three files") {
  Scenario sc;
  sc.name = "room";
  sc.environment.kind = "room";
  sc.mission.mission_time = 20;
  const auto dir = fresh_dir("figop_three_files");
  const auto files = write_suite(run_suite(sc, 1), dir);
  CHECK(files.size() == 3u);
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == 3);
  fs::remove_all(dir);
}

TEST_CASE("unwritable output directory is rejected up front") {
  const auto blocker = fresh_dir("figop_blocker");
  { std::ofstream(blocker) << "x"; }
  CHECK_THROWS(ensure_writable_dir(blocker / "sub"));
  fs::remove(blocker);
}

TEST_CASE("sensitivity pairs FIG and EXP runs by seed") {
  Scenario sc;
  sc.name = "sens";
  sc.environment.kind = "cross";
  sc.repetitions = 2;
  sc.mission.mission_time = 30;
  sc.mission.replan_period = 1;
  sc.mission.risk_noise = {0.0, 1.0};
  const auto r = run_sensitivity(sc, 1);
  CHECK(r.suite.runs_of(PlannerKind::figop).size() == 2u);
  CHECK(r.suite.runs_of(PlannerKind::exp).size() == 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r.suite.runs_of(PlannerKind::figop)[i]->seed == r.suite.runs_of(PlannerKind::exp)[i]->seed);
  }
  // Without noise the plan only changes when the world does.
  CHECK(r.fig.median < 0.3);
  CHECK(r.exp.median < 0.3);
  const auto dir = fresh_dir("figop_sens");
  const auto files = write_sensitivity(r, dir);
  CHECK(files.size() >= 2u);
  fs::remove_all(dir);
}
