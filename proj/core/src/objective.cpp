#include "figop/objective.hpp"

#include <cmath>
#include <string>

#include "figop/errors.hpp"

namespace figop {

std::string_view to_string(Fidelity f) {
  return f == Fidelity::metric ? "metric" : "topological";
}

void FigOpGraph::reset_edges() {
  const std::size_t n = nodes.size();
  cost.assign(n * n, 0.0);
  fidelity.assign(n * n, Fidelity::metric);
}

void FigOpGraph::set_edge(std::size_t i, std::size_t j, double c, Fidelity f) {
  const std::size_t n = nodes.size();
  cost[i * n + j] = c;
  cost[j * n + i] = c;
  fidelity[i * n + j] = f;
  fidelity[j * n + i] = f;
}

void FrontloadParams::validate() const {
  if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(k3)) {
    throw ParameterError("frontload parameters must be finite");
  }
  if (k1 < 0.0) throw ParameterError("frontload amplitude k1 must be >= 0");
  if (k2 <= 0.0) throw ParameterError("frontload inflection point k2 must be > 0");
  if (k3 <= 0.0) throw ParameterError("frontload steepness k3 must be > 0");
}

void ExpDiscountParams::validate() const {
  if (!std::isfinite(gamma) || !std::isfinite(k)) {
    throw ParameterError("discount parameters must be finite");
  }
  if (gamma <= 0.0 || gamma > 1.0) throw ParameterError("discount gamma must lie in (0, 1]");
  if (k <= 0.0) throw ParameterError("discount scale k must be > 0");
}

void validate(const ObjectiveKind& objective) {
  std::visit(
      [](const auto& p) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(p)>, OpObjective>) p.validate();
      },
      objective);
}

namespace detail {

double frontload_factor_unchecked(double cost, const FrontloadParams& p) {
  // exp overflows to +inf for very large costs, which correctly yields F = 1.
  return 1.0 + p.k1 / (1.0 + std::exp((cost - p.k2) / p.k3));
}

double exp_factor_unchecked(double cost, const ExpDiscountParams& p) {
  return std::pow(p.gamma, cost / p.k);
}

}  // namespace detail

double frontload_factor(double cost, const FrontloadParams& p) {
  p.validate();
  if (!(cost >= 0.0)) throw ParameterError("action cost must be >= 0");
  return detail::frontload_factor_unchecked(cost, p);
}

double exp_factor(double cost, const ExpDiscountParams& p) {
  p.validate();
  if (!(cost >= 0.0)) throw ParameterError("action cost must be >= 0");
  return detail::exp_factor_unchecked(cost, p);
}

PathEvaluation evaluate_path(std::span<const int> path, const FigOpGraph& graph,
                             const ObjectiveKind& objective, double budget) {
  if (path.empty() || path.front() != 0) {
    throw ContractError("path must start at the root node 0");
  }
  std::vector<char> seen(graph.size(), 0);
  for (int node : path) {
    if (node < 0 || static_cast<std::size_t>(node) >= graph.size()) {
      throw ContractError("path references node " + std::to_string(node) + " outside the graph");
    }
    if (seen[node]) throw ContractError("path repeats node " + std::to_string(node));
    seen[node] = 1;
  }

  PathEvaluation eval;
  eval.per_node_cumulative_cost.reserve(path.size());
  eval.per_node_cumulative_cost.push_back(0.0);
  double cumulative = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    cumulative += graph.edge(path[i - 1], path[i]);
    eval.per_node_cumulative_cost.push_back(cumulative);
    eval.objective_value += reward_factor(cumulative, objective) * graph.nodes[path[i]].info_gain;
  }
  eval.total_cost = cumulative;
  eval.feasible = cumulative <= budget;
  return eval;
}

double path_objective(std::span<const int> path, const FigOpGraph& graph,
                      const ObjectiveKind& objective) {
  double cumulative = 0.0;
  double value = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    cumulative += graph.edge(path[i - 1], path[i]);
    value += reward_factor(cumulative, objective) * graph.nodes[path[i]].info_gain;
  }
  return value;
}

double path_cost(std::span<const int> path, const FigOpGraph& graph) {
  double cumulative = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) cumulative += graph.edge(path[i - 1], path[i]);
  return cumulative;
}

}  // namespace figop
