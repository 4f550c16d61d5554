#include "figop/expected_ig.hpp"

#include <algorithm>

#include "figop/errors.hpp"

namespace figop {

IgCurve cumulative_ig_curve(const FigOpGraph& graph, std::span<const int> path, double horizon) {
  if (!(horizon >= 0.0)) throw ParameterError("horizon must be >= 0");
  IgCurve curve;
  curve.path.assign(path.begin(), path.end());
  curve.points.emplace_back(0.0, 0.0);
  double cost = 0.0;
  double ig = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    cost += graph.edge(path[k - 1], path[k]);
    if (cost > horizon) break;
    ig += graph.nodes[path[k]].info_gain;
    curve.points.emplace_back(cost, ig);
  }
  return curve;
}

double curve_value_at(const IgCurve& curve, double x) {
  double v = 0.0;
  for (const auto& [c, g] : curve.points) {
    if (c > x) break;
    v = g;
  }
  return v;
}

std::string_view to_string(CurvePlanner p) {
  switch (p) {
    case CurvePlanner::greedy: return "greedy";
    case CurvePlanner::op: return "op";
    case CurvePlanner::figop: return "figop";
    case CurvePlanner::exp: return "exp";
  }
  return "?";
}

CurvePlanner curve_planner_from_string(std::string_view name) {
  for (auto p : {CurvePlanner::greedy, CurvePlanner::op, CurvePlanner::figop, CurvePlanner::exp}) {
    if (to_string(p) == name) return p;
  }
  throw ParameterError("unknown planner '" + std::string(name) + "' (expected greedy, op, figop or exp)");
}

std::vector<IgCurve> expected_ig_curves(const FigOpGraph& graph, std::span<const CurvePlanner> planners,
                                        const ExpectedIgOptions& options) {
  std::vector<IgCurve> curves;
  if (graph.non_root_count() == 0) return curves;
  for (CurvePlanner p : planners) {
    std::vector<int> path{0};
    if (options.horizon > 0.0) {
      if (p == CurvePlanner::greedy) {
        path = solve_greedy(graph, options.horizon).path;
      } else {
        SolveRequest req;
        req.budget = options.horizon;
        req.time_limit = options.time_limit;
        req.rng_seed = options.rng_seed;
        req.config = options.gls;
        if (p == CurvePlanner::op) {
          req.objective = OpObjective{};
        } else if (p == CurvePlanner::figop) {
          req.objective = options.frontload;
        } else {
          req.objective = options.exp_discount;
        }
        path = solve_gls(graph, req).path;
      }
    }
    IgCurve c = cumulative_ig_curve(graph, path, options.horizon);
    c.planner = std::string(to_string(p));
    curves.push_back(std::move(c));
  }
  return curves;
}

}  // namespace figop
