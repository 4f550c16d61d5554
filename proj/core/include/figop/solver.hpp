#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "figop/figop_graph.hpp"
#include "figop/objective.hpp"

namespace figop {

enum class SolverKind : std::uint8_t { gls, greedy, brute_force };

std::string_view to_string(SolverKind kind);

struct Solution {
  // Node indices into the graph the solution was computed on; path[0] == 0.
  std::vector<int> path;
  // FigOpNode::key of every path entry, used to carry a plan across graphs.
  std::vector<std::int64_t> path_keys;
  // Every member key present in the solved graph (sorted). Lets the next
  // episode tell which clusters are new.
  std::vector<std::int64_t> graph_members;
  PathEvaluation evaluation;
  std::int64_t iterations = 0;
  std::uint64_t move_evaluations = 0;
  SolverKind solver = SolverKind::gls;
};

// Guided Local Search tuning. Defaults follow the usual GLS recipe for
// orienteering.
struct GlsConfig {
  // Penalization rounds. Reaching this cap ends the search deterministically.
  int max_iterations = 200;
  // lambda = lambda_coefficient * incumbent objective / incumbent cost.
  double lambda_coefficient = 0.3;
  // Restart from the seed after this many rounds without a new best.
  int restart_after = 5;
  // Additional guided searches, each seeded from one opening frontier.
  int extra_starts = 8;
  // Objective values closer than this are considered equal.
  double tolerance = 1e-9;
  // Upper bound on improvement passes inside one local search.
  int max_local_passes = 1000;
};

struct SolveRequest {
  ObjectiveKind objective = FrontloadParams{};
  double budget = 0.0;
  // Warm start, as node indices of the graph being solved (see seed_from_previous).
  std::optional<std::vector<int>> seed_path;
  // Wall-clock safety limit; the iteration cap normally ends the search first.
  double time_limit = 1.0;
  std::uint64_t rng_seed = 0;
  GlsConfig config;
  // Called after every penalization round with the round number and the
  // best (unpenalized) objective so far.
  std::function<void(std::int64_t, double)> progress;
};

// Per-edge penalty counters of the augmented objective
//   objective(path) - lambda * sum over path edges of penalty(e) * cost(e).
class PenaltyState {
 public:
  PenaltyState() = default;
  explicit PenaltyState(std::size_t node_count) : n_(node_count), counts_(node_count * node_count, 0) {}

  int at(std::size_t i, std::size_t j) const { return counts_.empty() ? 0 : counts_[i * n_ + j]; }
  void penalize(std::size_t i, std::size_t j) {
    ++counts_[i * n_ + j];
    ++counts_[j * n_ + i];
  }
  double lambda() const { return lambda_; }
  void set_lambda(double lambda) { lambda_ = lambda; }
  std::size_t node_count() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<int> counts_;
  double lambda_ = 0.0;
};

Solution solve_gls(const FigOpGraph& graph, const SolveRequest& request);

// Nearest-next construction: keep moving to the unvisited node with the
// smallest edge cost that still fits in the budget. Ties prefer larger
// information gain, then the lower node index.
// `report` only affects the returned evaluation, not the construction.
Solution solve_greedy(const FigOpGraph& graph, double budget, const ObjectiveKind& report = OpObjective{});

// Exhaustive search over every ordered subset. At most 9 non-root nodes.
Solution brute_force_solve(const FigOpGraph& graph, const ObjectiveKind& objective, double budget);

// Single improving insertion (best node at its best position) under the
// penalized objective. Returns the input unchanged if nothing improves.
Solution local_move_insert(const Solution& sol, const FigOpGraph& graph, const ObjectiveKind& objective,
                           double budget, const PenaltyState& penalties = {});

// One forward pass of pairwise position exchanges. An exchange is kept if it
// raises the objective, or keeps it (within 1e-9) while shortening the path.
Solution local_move_swap(const Solution& sol, const FigOpGraph& graph, const ObjectiveKind& objective,
                         double budget);

// Same as local_move_swap but scanning from the end of the path toward the root.
Solution local_move_backward_swap(const Solution& sol, const FigOpGraph& graph, const ObjectiveKind& objective,
                                  double budget);

// Warm start for the next episode: nodes of `prev` that survive in
// `new_graph` keep their order, clusters that `prev` never saw go in front
// (nearest-first among themselves), and the tail is trimmed to the budget.
std::vector<int> seed_from_previous(const Solution& prev, const FigOpGraph& new_graph, double budget);

// Fills path_keys, graph_members and evaluation for `path`.
Solution make_solution(std::vector<int> path, const FigOpGraph& graph, const ObjectiveKind& objective,
                       double budget, SolverKind kind);

}  // namespace figop
