#include "figop/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <unordered_map>

#include "figop/errors.hpp"

namespace figop {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::gls: return "gls";
    case SolverKind::greedy: return "greedy";
    case SolverKind::brute_force: return "brute_force";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

struct Score {
  double aug = 0.0;   // objective minus penalty term; equals obj without penalties
  double obj = 0.0;
  double cost = 0.0;
};

// Scores paths under the (optionally penalized) objective and counts how many
// candidate paths were considered.
class Evaluator {
 public:
  Evaluator(const FigOpGraph& graph, const ObjectiveKind& objective, const PenaltyState* penalties)
      : graph_(graph), objective_(objective), penalties_(penalties) {}

  Score operator()(std::span<const int> path) const {
    Score s;
    double penalty = 0.0;
    const bool penalized = penalties_ && penalties_->lambda() > 0.0 && penalties_->node_count() == graph_.size();
    for (std::size_t i = 1; i < path.size(); ++i) {
      const double e = graph_.edge(path[i - 1], path[i]);
      s.cost += e;
      s.obj += reward_factor(s.cost, objective_) * graph_.nodes[path[i]].info_gain;
      if (penalized) penalty += penalties_->at(path[i - 1], path[i]) * e;
    }
    s.aug = penalized ? s.obj - penalties_->lambda() * penalty : s.obj;
    return s;
  }

  void count(std::uint64_t n = 1) const { evaluations_ += n; }
  std::uint64_t evaluations() const { return evaluations_; }
  const FigOpGraph& graph() const { return graph_; }

 private:
  const FigOpGraph& graph_;
  const ObjectiveKind& objective_;
  const PenaltyState* penalties_;
  mutable std::uint64_t evaluations_ = 0;
};

bool improves(const Score& cand, const Score& cur, double tol) {
  if (cand.aug > cur.aug + tol) return true;
  return cand.aug >= cur.aug - tol && cand.cost < cur.cost - tol;
}

std::vector<char> visited_mask(std::span<const int> path, std::size_t n) {
  std::vector<char> mask(n, 0);
  for (int v : path) mask[v] = 1;
  return mask;
}

// Each move works on `path` in place and returns true if it changed it.
// `cur` is kept in sync with the path.

bool move_insert(std::vector<int>& path, Score& cur, const Evaluator& eval, double budget, double tol) {
  const auto& g = eval.graph();
  const auto mask = visited_mask(path, g.size());
  std::vector<int> cand;
  cand.reserve(path.size() + 1);
  Score best = cur;
  int best_node = -1;
  std::size_t best_pos = 0;
  for (std::size_t u = 1; u < g.size(); ++u) {
    if (mask[u]) continue;
    for (std::size_t pos = 1; pos <= path.size(); ++pos) {
      eval.count();
      const int prev = path[pos - 1];
      double delta = g.edge(prev, u);
      if (pos < path.size()) delta += g.edge(u, path[pos]) - g.edge(prev, path[pos]);
      if (cur.cost + delta > budget) continue;
      cand.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(pos));
      cand.push_back(static_cast<int>(u));
      cand.insert(cand.end(), path.begin() + static_cast<std::ptrdiff_t>(pos), path.end());
      const Score s = eval(cand);
      if (s.cost <= budget && improves(s, best, tol)) {
        best = s;
        best_node = static_cast<int>(u);
        best_pos = pos;
      }
    }
  }
  if (best_node < 0) return false;
  path.insert(path.begin() + static_cast<std::ptrdiff_t>(best_pos), best_node);
  cur = best;
  return true;
}

bool move_remove(std::vector<int>& path, Score& cur, const Evaluator& eval, double budget, double tol) {
  std::vector<int> cand;
  Score best = cur;
  std::size_t best_pos = 0;
  for (std::size_t pos = 1; pos < path.size(); ++pos) {
    eval.count();
    cand.assign(path.begin(), path.end());
    cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(pos));
    const Score s = eval(cand);
    if (s.cost <= budget && improves(s, best, tol)) {
      best = s;
      best_pos = pos;
    }
  }
  if (best_pos == 0) return false;
  path.erase(path.begin() + static_cast<std::ptrdiff_t>(best_pos));
  cur = best;
  return true;
}

// Moves one visited node to the best other position.
bool move_relocate(std::vector<int>& path, Score& cur, const Evaluator& eval, double budget, double tol) {
  std::vector<int> cand;
  Score best = cur;
  std::size_t best_from = 0;
  std::size_t best_to = 0;
  for (std::size_t from = 1; from < path.size(); ++from) {
    for (std::size_t to = 1; to < path.size(); ++to) {
      if (to == from) continue;
      eval.count();
      cand.assign(path.begin(), path.end());
      const int v = cand[from];
      cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(from));
      cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(to), v);
      const Score s = eval(cand);
      if (s.cost <= budget && improves(s, best, tol)) {
        best = s;
        best_from = from;
        best_to = to;
      }
    }
  }
  if (best_from == 0) return false;
  const int v = path[best_from];
  path.erase(path.begin() + static_cast<std::ptrdiff_t>(best_from));
  path.insert(path.begin() + static_cast<std::ptrdiff_t>(best_to), v);
  cur = best;
  return true;
}

// Substitutes an unvisited node for a visited one at the same position.
bool move_replace(std::vector<int>& path, Score& cur, const Evaluator& eval, double budget, double tol) {
  const auto& g = eval.graph();
  const auto mask = visited_mask(path, g.size());
  std::vector<int> cand(path);
  Score best = cur;
  std::size_t best_pos = 0;
  int best_node = -1;
  for (std::size_t pos = 1; pos < path.size(); ++pos) {
    const int old = path[pos];
    for (std::size_t u = 1; u < g.size(); ++u) {
      if (mask[u]) continue;
      eval.count();
      cand[pos] = static_cast<int>(u);
      const Score s = eval(cand);
      if (s.cost <= budget && improves(s, best, tol)) {
        best = s;
        best_pos = pos;
        best_node = static_cast<int>(u);
      }
    }
    cand[pos] = old;
  }
  if (best_node < 0) return false;
  path[best_pos] = best_node;
  cur = best;
  return true;
}

bool move_two_opt(std::vector<int>& path, Score& cur, const Evaluator& eval, double budget, double tol) {
  std::vector<int> cand(path);
  Score best = cur;
  std::size_t bi = 0;
  std::size_t bj = 0;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    for (std::size_t j = i + 1; j < path.size(); ++j) {
      eval.count();
      std::reverse(cand.begin() + static_cast<std::ptrdiff_t>(i), cand.begin() + static_cast<std::ptrdiff_t>(j) + 1);
      const Score s = eval(cand);
      std::reverse(cand.begin() + static_cast<std::ptrdiff_t>(i), cand.begin() + static_cast<std::ptrdiff_t>(j) + 1);
      if (s.cost <= budget && improves(s, best, tol)) {
        best = s;
        bi = i;
        bj = j;
      }
    }
  }
  if (bj == 0) return false;
  std::reverse(path.begin() + static_cast<std::ptrdiff_t>(bi), path.begin() + static_cast<std::ptrdiff_t>(bj) + 1);
  cur = best;
  return true;
}

// First-improvement pass over position pairs. Forward: (i, j) with i
// ascending, j > i ascending. Backward: i descending from the tail, j < i
// descending toward the root.
bool swap_pass(std::vector<int>& path, Score& cur, const Evaluator& eval, double budget, double tol, bool backward) {
  const std::size_t len = path.size();
  if (len <= 2) return false;
  bool changed = false;
  auto try_pair = [&](std::size_t i, std::size_t j) {
    eval.count();
    std::swap(path[i], path[j]);
    const Score s = eval(path);
    if (s.cost <= budget && improves(s, cur, tol)) {
      cur = s;
      changed = true;
    } else {
      std::swap(path[i], path[j]);
    }
  };
  if (!backward) {
    for (std::size_t i = 1; i + 1 < len; ++i) {
      for (std::size_t j = i + 1; j < len; ++j) try_pair(i, j);
    }
  } else {
    for (std::size_t i = len - 1; i >= 2; --i) {
      for (std::size_t j = i - 1; j >= 1; --j) try_pair(j, i);
    }
  }
  return changed;
}

std::vector<int> sanitize_seed(std::span<const int> seed, const FigOpGraph& g, double budget) {
  std::vector<int> path{0};
  std::vector<char> seen(g.size(), 0);
  seen[0] = 1;
  for (int v : seed) {
    if (v <= 0 || static_cast<std::size_t>(v) >= g.size() || seen[v]) continue;
    seen[v] = 1;
    path.push_back(v);
  }
  while (path.size() > 1 && path_cost(path, g) > budget) path.pop_back();
  return path;
}

// Repeatedly inserts the (node, position) with the best objective gain per
// meter of added cost while the budget allows.
std::vector<int> ratio_insertion(const FigOpGraph& g, const Evaluator& eval, double budget,
                                 std::vector<int> path = {0}) {
  std::vector<char> mask = visited_mask(path, g.size());
  Score cur = eval(path);
  std::vector<int> cand;
  for (;;) {
    double best_ratio = 0.0;
    int best_node = -1;
    std::size_t best_pos = 0;
    Score best_score;
    for (std::size_t u = 1; u < g.size(); ++u) {
      if (mask[u]) continue;
      for (std::size_t pos = 1; pos <= path.size(); ++pos) {
        cand.assign(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(pos));
        cand.push_back(static_cast<int>(u));
        cand.insert(cand.end(), path.begin() + static_cast<std::ptrdiff_t>(pos), path.end());
        const Score s = eval(cand);
        if (s.cost > budget) continue;
        const double gain = s.obj - cur.obj;
        if (gain <= 0.0) continue;
        const double ratio = gain / std::max(s.cost - cur.cost, 1e-9);
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best_node = static_cast<int>(u);
          best_pos = pos;
          best_score = s;
        }
      }
    }
    if (best_node < 0) break;
    path.insert(path.begin() + static_cast<std::ptrdiff_t>(best_pos), best_node);
    mask[best_node] = 1;
    cur = best_score;
  }
  return path;
}

bool better_solution(const Score& cand, const Score& best, double tol) {
  if (cand.obj > best.obj + tol) return true;
  return cand.obj >= best.obj - tol && cand.cost < best.cost - tol;
}

}  // namespace

Solution make_solution(std::vector<int> path, const FigOpGraph& graph, const ObjectiveKind& objective,
                       double budget, SolverKind kind) {
  Solution sol;
  sol.evaluation = evaluate_path(path, graph, objective, budget);
  sol.path = std::move(path);
  sol.solver = kind;
  sol.path_keys.reserve(sol.path.size());
  for (int v : sol.path) sol.path_keys.push_back(graph.nodes[v].key);
  for (std::size_t i = 1; i < graph.size(); ++i) {
    sol.graph_members.push_back(graph.nodes[i].key);
    sol.graph_members.insert(sol.graph_members.end(), graph.nodes[i].members.begin(), graph.nodes[i].members.end());
  }
  std::sort(sol.graph_members.begin(), sol.graph_members.end());
  sol.graph_members.erase(std::unique(sol.graph_members.begin(), sol.graph_members.end()), sol.graph_members.end());
  return sol;
}

Solution solve_greedy(const FigOpGraph& graph, double budget, const ObjectiveKind& report) {
  std::vector<int> path{0};
  if (graph.size() <= 1) return make_solution(path, graph, report, budget, SolverKind::greedy);
  constexpr double tol = 1e-9;
  std::vector<char> used(graph.size(), 0);
  used[0] = 1;
  double spent = 0.0;
  int cur = 0;
  for (;;) {
    int pick = -1;
    for (std::size_t u = 1; u < graph.size(); ++u) {
      if (used[u]) continue;
      const double c = graph.edge(cur, u);
      if (spent + c > budget) continue;
      if (pick < 0) {
        pick = static_cast<int>(u);
        continue;
      }
      const double cp = graph.edge(cur, pick);
      if (c < cp - tol) {
        pick = static_cast<int>(u);
      } else if (c <= cp + tol && graph.nodes[u].info_gain > graph.nodes[pick].info_gain + tol) {
        pick = static_cast<int>(u);
      }
    }
    if (pick < 0) break;
    spent += graph.edge(cur, pick);
    used[pick] = 1;
    path.push_back(pick);
    cur = pick;
  }
  return make_solution(path, graph, report, budget, SolverKind::greedy);
}

Solution brute_force_solve(const FigOpGraph& graph, const ObjectiveKind& objective, double budget) {
  validate(objective);
  if (graph.non_root_count() > 9) {
    throw SizeError("brute force is limited to 9 non-root nodes, got " + std::to_string(graph.non_root_count()));
  }
  constexpr double tol = 1e-12;
  std::vector<int> path{0};
  std::vector<char> used(graph.size(), 0);
  used[0] = 1;
  std::vector<int> best_path{0};
  double best_obj = 0.0;
  double best_cost = 0.0;

  std::function<void(double, double)> dfs = [&](double cost, double obj) {
    if (obj > best_obj + tol || (obj >= best_obj - tol && cost < best_cost - tol)) {
      best_obj = obj;
      best_cost = cost;
      best_path = path;
    }
    const int last = path.back();
    for (std::size_t u = 1; u < graph.size(); ++u) {
      if (used[u]) continue;
      const double c = cost + graph.edge(last, u);
      if (c > budget) continue;
      used[u] = 1;
      path.push_back(static_cast<int>(u));
      dfs(c, obj + reward_factor(c, objective) * graph.nodes[u].info_gain);
      path.pop_back();
      used[u] = 0;
    }
  };
  dfs(0.0, 0.0);
  return make_solution(best_path, graph, objective, budget, SolverKind::brute_force);
}

Solution local_move_insert(const Solution& sol, const FigOpGraph& graph, const ObjectiveKind& objective,
                           double budget, const PenaltyState& penalties) {
  const Evaluator eval(graph, objective, &penalties);
  std::vector<int> path = sol.path;
  Score cur = eval(path);
  if (!move_insert(path, cur, eval, budget, 1e-9)) return sol;
  Solution out = make_solution(std::move(path), graph, objective, budget, sol.solver);
  out.move_evaluations = eval.evaluations();
  return out;
}

Solution local_move_swap(const Solution& sol, const FigOpGraph& graph, const ObjectiveKind& objective,
                         double budget) {
  const Evaluator eval(graph, objective, nullptr);
  std::vector<int> path = sol.path;
  Score cur = eval(path);
  if (!swap_pass(path, cur, eval, budget, 1e-9, false)) return sol;
  return make_solution(std::move(path), graph, objective, budget, sol.solver);
}

Solution local_move_backward_swap(const Solution& sol, const FigOpGraph& graph, const ObjectiveKind& objective,
                                  double budget) {
  const Evaluator eval(graph, objective, nullptr);
  std::vector<int> path = sol.path;
  Score cur = eval(path);
  if (!swap_pass(path, cur, eval, budget, 1e-9, true)) return sol;
  return make_solution(std::move(path), graph, objective, budget, sol.solver);
}

Solution solve_gls(const FigOpGraph& graph, const SolveRequest& request) {
  validate(request.objective);
  if (!(request.time_limit > 0.0)) throw ParameterError("time limit must be positive");
  if (!(request.budget > 0.0) || !std::isfinite(request.budget)) throw ParameterError("budget must be positive");
  const auto& cfg = request.config;
  const double budget = request.budget;
  const double tol = cfg.tolerance;

  if (graph.size() <= 1) return make_solution({0}, graph, request.objective, budget, SolverKind::gls);

  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(request.time_limit));
  auto out_of_time = [&] { return Clock::now() >= deadline; };

  PenaltyState penalties(graph.size());
  const Evaluator plain(graph, request.objective, nullptr);
  const Evaluator eval(graph, request.objective, &penalties);

  // Candidate pool: greedy (guarantees dominance), the warm start, and an
  // objective-aware insertion construction.
  std::vector<std::vector<int>> pool;
  pool.push_back(solve_greedy(graph, budget).path);
  std::vector<int> restart_point;
  if (request.seed_path) {
    restart_point = sanitize_seed(*request.seed_path, graph, budget);
    pool.push_back(restart_point);
  }
  pool.push_back(ratio_insertion(graph, plain, budget));

  std::vector<int> best_path = pool.front();
  Score best = plain(best_path);
  for (const auto& p : pool) {
    const Score s = plain(p);
    if (better_solution(s, best, tol)) {
      best = s;
      best_path = p;
    }
  }
  if (restart_point.empty()) restart_point = best_path;

  std::mt19937_64 rng(request.rng_seed);
  std::vector<int> current = best_path;
  Score cur = eval(current);

  auto record = [&](const std::vector<int>& path) {
    const Score s = plain(path);
    if (better_solution(s, best, tol)) {
      best = s;
      best_path = path;
      return true;
    }
    return false;
  };

  // Move order is shuffled per pass from the seeded stream; it only affects
  // which of several improving moves lands first.
  enum Move { kInsert, kSwap, kBackwardSwap, kTwoOpt, kRelocate, kReplace, kRemove };
  std::vector<Move> order{kInsert, kSwap, kBackwardSwap, kTwoOpt, kRelocate, kReplace, kRemove};

  auto local_search = [&] {
    bool any = false;
    for (int pass = 0; pass < cfg.max_local_passes; ++pass) {
      bool improved = false;
      std::shuffle(order.begin() + 1, order.end(), rng);
      for (Move m : order) {
        bool moved = false;
        switch (m) {
          case kInsert: moved = move_insert(current, cur, eval, budget, tol); break;
          case kSwap: moved = swap_pass(current, cur, eval, budget, tol, false); break;
          case kBackwardSwap: moved = swap_pass(current, cur, eval, budget, tol, true); break;
          case kTwoOpt: moved = move_two_opt(current, cur, eval, budget, tol); break;
          case kRelocate: moved = move_relocate(current, cur, eval, budget, tol); break;
          case kReplace: moved = move_replace(current, cur, eval, budget, tol); break;
          case kRemove: moved = move_remove(current, cur, eval, budget, tol); break;
        }
        if (moved) {
          improved = true;
          any = true;
          record(current);
        }
      }
      if (!improved || out_of_time()) break;
    }
    return any;
  };

  std::int64_t iteration = 0;
  // One guided search: penalization rounds from `start`, returning to `seed`
  // after restart_after rounds without a new best. Penalties persist within
  // the run.
  auto guided_search = [&](const std::vector<int>& start, const std::vector<int>& seed) {
    penalties = PenaltyState(graph.size());
    current = start;
    cur = eval(current);
    record(current);
    int stall = 0;
    for (int round = 0; round < cfg.max_iterations && !out_of_time(); ++round) {
      ++iteration;
      local_search();
      const bool improved = record(current);
      stall = improved ? 0 : stall + 1;
      if (request.progress) request.progress(iteration, best.obj);

      if (penalties.lambda() == 0.0) {
        const Score s = plain(current);
        if (s.cost <= 0.0) break;  // nothing reachable, nothing to penalize
        penalties.set_lambda(cfg.lambda_coefficient * s.obj / s.cost);
        if (penalties.lambda() <= 0.0) break;
      }

      if (current.size() > 1) {
        double max_util = -1.0;
        for (std::size_t i = 1; i < current.size(); ++i) {
          const double u = graph.edge(current[i - 1], current[i]) / (1.0 + penalties.at(current[i - 1], current[i]));
          max_util = std::max(max_util, u);
        }
        for (std::size_t i = 1; i < current.size(); ++i) {
          const double u = graph.edge(current[i - 1], current[i]) / (1.0 + penalties.at(current[i - 1], current[i]));
          if (u >= max_util - tol) penalties.penalize(current[i - 1], current[i]);
        }
      }

      if (stall >= cfg.restart_after) {
        current = seed;
        stall = 0;
      }
      cur = eval(current);
    }
  };

  guided_search(best_path, restart_point);

  // Further runs open with a single frontier and fill the rest by insertion.
  // The first nodes tried are those with the best gain per meter from the root.
  std::vector<int> openers;
  for (std::size_t v = 1; v < graph.size(); ++v) {
    if (graph.edge(0, v) <= budget) openers.push_back(static_cast<int>(v));
  }
  std::stable_sort(openers.begin(), openers.end(), [&](int a, int b) {
    return graph.nodes[a].info_gain / std::max(graph.edge(0, a), 1e-9) >
           graph.nodes[b].info_gain / std::max(graph.edge(0, b), 1e-9);
  });
  if (openers.size() > static_cast<std::size_t>(std::max(cfg.extra_starts, 0))) {
    openers.resize(static_cast<std::size_t>(std::max(cfg.extra_starts, 0)));
  }
  std::vector<std::vector<int>> tried{restart_point};
  for (int v : openers) {
    if (out_of_time()) break;
    auto seed = ratio_insertion(graph, plain, budget, {0, v});
    if (std::find(tried.begin(), tried.end(), seed) != tried.end()) continue;
    tried.push_back(seed);
    guided_search(seed, seed);
  }

  Solution sol = make_solution(std::move(best_path), graph, request.objective, budget, SolverKind::gls);
  sol.iterations = iteration;
  sol.move_evaluations = eval.evaluations();
  return sol;
}

std::vector<int> seed_from_previous(const Solution& prev, const FigOpGraph& new_graph, double budget) {
  std::unordered_map<std::int64_t, int> index_of_key;
  for (std::size_t i = 1; i < new_graph.size(); ++i) {
    for (auto m : new_graph.nodes[i].members) index_of_key.emplace(m, static_cast<int>(i));
    index_of_key.emplace(new_graph.nodes[i].key, static_cast<int>(i));
  }
  std::vector<char> used(new_graph.size(), 0);
  used[0] = 1;

  std::vector<int> retained;
  for (std::size_t k = 1; k < prev.path_keys.size(); ++k) {
    const auto it = index_of_key.find(prev.path_keys[k]);
    if (it == index_of_key.end() || used[it->second]) continue;
    used[it->second] = 1;
    retained.push_back(it->second);
  }

  auto seen_before = [&](const FigOpNode& n) {
    auto known = [&](std::int64_t k) {
      return std::binary_search(prev.graph_members.begin(), prev.graph_members.end(), k);
    };
    if (known(n.key)) return true;
    return std::any_of(n.members.begin(), n.members.end(), known);
  };
  std::vector<int> fresh;
  for (std::size_t i = 1; i < new_graph.size(); ++i) {
    if (!used[i] && !seen_before(new_graph.nodes[i])) fresh.push_back(static_cast<int>(i));
  }

  std::vector<int> seed{0};
  int cur = 0;
  while (!fresh.empty()) {
    auto it = std::min_element(fresh.begin(), fresh.end(), [&](int a, int b) {
      const double ca = new_graph.edge(cur, a);
      const double cb = new_graph.edge(cur, b);
      return ca < cb || (ca == cb && a < b);
    });
    cur = *it;
    seed.push_back(cur);
    fresh.erase(it);
  }
  seed.insert(seed.end(), retained.begin(), retained.end());
  while (seed.size() > 1 && path_cost(seed, new_graph) > budget) seed.pop_back();
  return seed;
}

}  // namespace figop
