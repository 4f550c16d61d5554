#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "figop/figop_graph.hpp"

namespace figop {

// Shaping parameters of the frontloading function
//   F(a) = 1 + k1 / (1 + exp((a - k2) / k3)).
// k1 is the amplitude, k2 the inflection point (m), k3 the steepness (m).
// k1 = 0 turns F into the constant 1.
struct FrontloadParams {
  double k1 = 1.0;
  double k2 = 50.0;
  double k3 = 10.0;

  void validate() const;
};

// E(a) = gamma^(a / k).
struct ExpDiscountParams {
  double gamma = 0.7;
  double k = 50.0;

  void validate() const;
};

// Plain orienteering: every reward counts once, regardless of when it is collected.
struct OpObjective {};

using ObjectiveKind = std::variant<FrontloadParams, OpObjective, ExpDiscountParams>;

double frontload_factor(double cost, const FrontloadParams& p);
double exp_factor(double cost, const ExpDiscountParams& p);

// Multiplier applied to a node's information gain when the node is reached
// after `cost` meters. Parameters are assumed valid.
inline double reward_factor(double cost, const ObjectiveKind& objective);

void validate(const ObjectiveKind& objective);

struct PathEvaluation {
  double objective_value = 0.0;
  double total_cost = 0.0;
  bool feasible = true;
  // a_pi(n_i) for every node of the path, root included (always 0).
  std::vector<double> per_node_cumulative_cost;
};

// Scores a root-anchored, non-repeating node sequence. Infeasible paths are
// still scored; `feasible` reports whether total_cost <= budget.
// Throws ContractError if the path does not start at node 0 or repeats a node.
PathEvaluation evaluate_path(std::span<const int> path, const FigOpGraph& graph,
                             const ObjectiveKind& objective, double budget);

// Same sum without the bookkeeping or the contract checks. Used in inner loops.
double path_objective(std::span<const int> path, const FigOpGraph& graph,
                      const ObjectiveKind& objective);
double path_cost(std::span<const int> path, const FigOpGraph& graph);

// ---------------------------------------------------------------------------

namespace detail {
double frontload_factor_unchecked(double cost, const FrontloadParams& p);
double exp_factor_unchecked(double cost, const ExpDiscountParams& p);
}  // namespace detail

inline double reward_factor(double cost, const ObjectiveKind& objective) {
  if (const auto* fig = std::get_if<FrontloadParams>(&objective)) {
    return detail::frontload_factor_unchecked(cost, *fig);
  }
  if (const auto* e = std::get_if<ExpDiscountParams>(&objective)) {
    return detail::exp_factor_unchecked(cost, *e);
  }
  return 1.0;
}

}  // namespace figop
