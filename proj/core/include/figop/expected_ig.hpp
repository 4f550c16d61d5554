#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "figop/figop_graph.hpp"
#include "figop/solver.hpp"

namespace figop {

// Cumulative information gain against cumulative path cost: (0, 0) followed by
// one point per visited node whose arrival cost is within the horizon.
struct IgCurve {
  std::string planner;
  std::vector<int> path;
  std::vector<std::pair<double, double>> points;
};

IgCurve cumulative_ig_curve(const FigOpGraph& graph, std::span<const int> path, double horizon);

// Information collected by the time the path has cost `x` (a right-continuous step).
double curve_value_at(const IgCurve& curve, double x);

enum class CurvePlanner : std::uint8_t { greedy, op, figop, exp };
std::string_view to_string(CurvePlanner p);
CurvePlanner curve_planner_from_string(std::string_view name);

struct ExpectedIgOptions {
  double horizon = 200.0;  // m, also the solver budget
  FrontloadParams frontload;
  ExpDiscountParams exp_discount;
  GlsConfig gls;
  double time_limit = 30.0;
  std::uint64_t rng_seed = 0;
};

// Solves the frozen graph once per planner and returns one curve each. A
// graph without frontier nodes yields an empty list.
std::vector<IgCurve> expected_ig_curves(const FigOpGraph& graph, std::span<const CurvePlanner> planners,
                                        const ExpectedIgOptions& options = {});

}  // namespace figop
