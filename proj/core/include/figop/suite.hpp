#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "figop/scenario.hpp"
#include "figop/simulator.hpp"
#include "figop/stats.hpp"

namespace figop {

struct RunMetrics {
  PlannerKind planner = PlannerKind::figop;
  std::uint64_t seed = 0;
  double free_area = 0.0;               // m^2
  double coverage_rate = 0.0;           // m^2/min over the whole mission
  double coverage_at_horizon = 0.0;     // m^2
  double time_to_95 = 0.0;              // min; NaN when never reached
  double heading_delta_mean = 0.0;      // rad
  double heading_delta_median = 0.0;    // rad
  double mean_solve_seconds = 0.0;      // wall clock; excluded from CSV output
  std::vector<double> heading_deltas;
  CoverageLog log;
};

// Coverage at time t, interpolating linearly between samples and holding the
// last value afterwards.
double coverage_at(const CoverageLog& log, double t);
// First time coverage reaches `target` (linear interpolation); NaN if never.
double time_to_coverage(const CoverageLog& log, double target);

RunMetrics compute_metrics(const CoverageLog& log, double free_area, const Scenario& sc);

struct SuiteResult {
  Scenario scenario;
  // Sorted by (planner position in the scenario, seed).
  std::vector<RunMetrics> runs;

  std::vector<const RunMetrics*> runs_of(PlannerKind p) const;
  // Per-planner metric column, in seed order.
  std::vector<double> column(PlannerKind p, double RunMetrics::*field) const;
};

using SuiteProgress = std::function<void(const RunMetrics&)>;

// Runs every (planner, repetition) pair on up to `workers` threads. Each run
// builds its own environment, so runs share nothing.
SuiteResult run_suite(const Scenario& sc, int workers = 1, const SuiteProgress& progress = {});

// Writes <name>_<planner>_seed<k>.csv per run, <name>_summary.csv and
// <name>_coverage_curves.csv. Returns the paths written.
std::vector<std::filesystem::path> write_suite(const SuiteResult& result, const std::filesystem::path& out_dir);

// Creates the directory if needed and checks that a file can be written there.
// Throws std::runtime_error otherwise.
void ensure_writable_dir(const std::filesystem::path& dir);

struct SensitivityResult {
  SuiteResult suite;
  std::vector<double> fig_deltas;  // pooled over seeds
  std::vector<double> exp_deltas;
  stats::BoxStats fig;
  stats::BoxStats exp;
};

// Paired FIG / EXP missions under the scenario's risk noise.
SensitivityResult run_sensitivity(Scenario sc, int workers = 1);
std::vector<std::filesystem::path> write_sensitivity(const SensitivityResult& result,
                                                     const std::filesystem::path& out_dir);

}  // namespace figop
