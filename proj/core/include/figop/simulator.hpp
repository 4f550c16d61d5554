#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "figop/environment.hpp"
#include "figop/figop_graph.hpp"
#include "figop/frontier.hpp"
#include "figop/metric_map.hpp"
#include "figop/objective.hpp"
#include "figop/solver.hpp"
#include "figop/topo_map.hpp"

namespace figop {

enum class PlannerKind : std::uint8_t { figop, op, greedy, figlf, exp };

std::string_view to_string(PlannerKind kind);
// Throws ParameterError for unknown names.
PlannerKind planner_from_string(std::string_view name);

struct RiskNoise {
  double sigma = 0.0;   // 0 disables the perturbation
  double period = 1.0;  // s between re-draws
};

struct MissionConfig {
  double mission_time = 1800.0;  // s
  double replan_period = 5.0;    // s
  PlannerKind planner = PlannerKind::figop;
  FrontloadParams frontload;
  ExpDiscountParams exp_discount;
  SensorModel sensor;
  InfoGainParams info_gain;
  RiskNoise risk_noise;
  std::uint64_t rng_seed = 0;

  double speed = 1.0;                // m/s
  double window_half_extent = 20.0;  // m
  double sense_interval = 1.0;       // m of travel between scans
  double breadcrumb_spacing = 2.0;   // m
  double breadcrumb_link_radius = 5.0;
  double frontier_node_radius = 1.5;  // m, frontier cells gathered per node
  double cluster_eps = 3.0;
  int cluster_min_pts = 2;
  GlsConfig gls{.max_iterations = 40};
  double solver_time_limit = 30.0;  // s, safety only

  void validate() const;
  // Objective the planner optimizes (OP for greedy, which ignores it).
  ObjectiveKind objective() const;
};

struct RobotState {
  Vec2 position;
  GridCell cell;
  double heading = 0.0;  // rad, toward the first waypoint of the current plan
  double speed = 1.0;
  double odometer = 0.0;
  double elapsed = 0.0;
};

struct CoverageSample {
  double t = 0.0;         // s
  double coverage = 0.0;  // m^2
  double odometer = 0.0;  // m
  double heading = 0.0;   // rad, NaN before the first plan
  std::int64_t episode = 0;

  friend bool operator==(const CoverageSample&, const CoverageSample&) = default;
};

struct CoverageLog {
  std::vector<CoverageSample> samples;
  std::string end_reason;
  // Wall-clock seconds spent in the solver per episode. Not deterministic;
  // kept apart from the samples.
  std::vector<double> solve_seconds;
};

// CSV with header t_s,coverage_m2,odometer_m,heading_rad,episode.
void write_coverage_csv(std::ostream& os, const CoverageLog& log);

// Everything a planning episode saw, for offline analysis.
struct PlanSnapshot {
  double t = 0.0;
  std::int64_t episode = 0;
  FigOpGraph graph;
  double budget = 0.0;
};

// Multiplies every free cell's risk by exp(g), g ~ N(0, sigma^2), clamped to
// [1, 10]. Draws one normal per cell in storage order, free or not, so the
// stream position does not depend on map contents.
MetricMap inject_risk_noise(const MetricMap& map, double sigma, std::mt19937_64& rng);

// Absolute heading changes between consecutive planning episodes, wrapped to
// [0, pi], for episodes planned no later than `window` seconds after the first.
std::vector<double> heading_sensitivity(const CoverageLog& log, double window);

// Result of one scan.
struct ScanResult {
  std::vector<GridCell> free_cells;      // within r_sense
  std::vector<GridCell> occupied_cells;  // within r_sense
  LongRangeReturns long_range;           // free cells seen beyond r_sense
};

// Casts rays_per_scan rays from the center of `origin` with line-of-sight
// occlusion. A ray stops at the first occupied cell. Occupied cells 8-adjacent
// to an observed free cell are reported as seen.
ScanResult cast_scan(const Environment& env, GridCell origin, const SensorModel& sensor);

// One exploration mission. Owns its maps and random streams.
class Mission {
 public:
  Mission(const Environment& env, MissionConfig cfg);

  // Scans from the current position and updates the known map, the window,
  // breadcrumbs and frontier nodes.
  void sense();
  // Runs one planning episode. Returns false when the mission cannot continue.
  bool plan();
  // Runs until mission_time or early termination.
  CoverageLog run();

  const RobotState& robot() const { return robot_; }
  const MetricMap& window() const { return window_; }
  const MetricMap& known() const { return known_; }
  const TopoMap& topo() const { return topo_; }
  const std::unordered_map<TopoId, double>& frontier_gains() const { return gains_; }
  double coverage() const;
  const CoverageLog& log() const { return log_; }

  std::function<void(const PlanSnapshot&)> on_plan;
  // Called after every executed grid step.
  std::function<void(const RobotState&)> on_move;

 private:
  void refresh_frontier_nodes();
  void drop_breadcrumb();
  void link_to_breadcrumbs(TopoId node, GridCell cell, bool require_one);
  void record();
  bool target_still_valid() const;
  ObjectiveKind objective() const { return cfg_.objective(); }

  const Environment& env_;
  MissionConfig cfg_;
  RobotState robot_;
  MetricMap known_;
  MetricMap window_;
  TopoMap topo_;
  std::unordered_map<TopoId, double> gains_;
  LongRangeReturns long_range_;
  std::size_t known_free_ = 0;

  TopoId last_breadcrumb_ = 0;
  Vec2 last_breadcrumb_pos_;

  std::mt19937_64 noise_rng_;
  std::uint64_t noise_draw_seed_ = 0;
  double last_noise_draw_ = -1.0;

  std::optional<Solution> previous_;
  std::vector<GridCell> route_;
  std::size_t route_pos_ = 0;
  std::optional<GridCell> target_;
  double last_plan_t_ = 0.0;
  std::int64_t episode_ = 0;
  double heading_ = 0.0;
  bool has_plan_ = false;

  CoverageLog log_;
};

// Convenience wrapper: Mission(env, cfg).run().
CoverageLog run_mission(const Environment& env, const MissionConfig& cfg);

}  // namespace figop
