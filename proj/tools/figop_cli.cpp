// figop command line: solve, explore, expected-ig, sensitivity, gen-env.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "figop/environment.hpp"
#include "figop/errors.hpp"
#include "figop/expected_ig.hpp"
#include "figop/instance_io.hpp"
#include "figop/scenario.hpp"
#include "figop/solver.hpp"
#include "figop/suite.hpp"

namespace {

using namespace figop;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  return read_instance(in);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct SolveArgs {
  std::string instance;
  std::string objective = "fig";
  std::string solver = "gls";
  double k1 = 1.0, k2 = 50.0, k3 = 10.0;
  double gamma = 0.7, k = 50.0;
  std::optional<double> budget;
  std::uint64_t seed = 0;
  double time_limit = 1.0;
  int iterations = 200;
};

ObjectiveKind objective_of(const SolveArgs& a) {
  if (a.objective == "fig") return FrontloadParams{a.k1, a.k2, a.k3};
  if (a.objective == "op") return OpObjective{};
  if (a.objective == "exp") return ExpDiscountParams{a.gamma, a.k};
  throw ParameterError("unknown objective '" + a.objective + "' (expected fig, op or exp)");
}

int run_solve(const SolveArgs& a, const std::string& format) {
  const Instance inst = load_instance(a.instance);
  const double budget = a.budget.value_or(inst.budget);
  const ObjectiveKind obj = objective_of(a);
  validate(obj);
  Solution sol;
  if (inst.graph.non_root_count() == 0) {
    sol = make_solution({0}, inst.graph, obj, budget, SolverKind::gls);
  } else if (a.solver == "gls") {
    SolveRequest req;
    req.objective = obj;
    req.budget = budget;
    req.rng_seed = a.seed;
    req.time_limit = a.time_limit;
    req.config.max_iterations = a.iterations;
    sol = solve_gls(inst.graph, req);
  } else if (a.solver == "greedy") {
    sol = solve_greedy(inst.graph, budget, obj);
  } else if (a.solver == "brute") {
    sol = brute_force_solve(inst.graph, obj, budget);
  } else {
    throw ParameterError("unknown solver '" + a.solver + "' (expected gls, greedy or brute)");
  }

  std::string path;
  std::string fid;
  for (std::size_t i = 0; i < sol.path.size(); ++i) {
    path += (i ? " " : "") + std::to_string(sol.path[i]);
    if (i > 0) fid += std::string(i > 1 ? " " : "") + std::string(to_string(inst.graph.edge_fidelity(sol.path[i - 1], sol.path[i])));
  }
  if (format == "csv") {
    std::cout << "objective,total_cost,feasible,path,fidelity\n"
              << fixed(sol.evaluation.objective_value) << ',' << fixed(sol.evaluation.total_cost) << ','
              << (sol.evaluation.feasible ? "true" : "false") << ',' << path << ',' << fid << '\n';
  } else {
    std::cout << "path:      " << path << '\n'
              << "objective: " << fixed(sol.evaluation.objective_value) << '\n'
              << "cost:      " << fixed(sol.evaluation.total_cost) << " / " << fixed(budget) << '\n'
              << "fidelity:  " << (fid.empty() ? "-" : fid) << '\n';
  }
  return 0;
}

Scenario scenario_with_overrides(const std::string& file, std::optional<std::int64_t> seed,
                                 const std::string& planner, std::optional<int> reps) {
  Scenario sc = load_scenario(file);
  if (seed) sc.seed_base = *seed;
  if (!planner.empty()) {
    sc.planners.clear();
    for (const auto& p : split_list(planner)) sc.planners.push_back(planner_from_string(p));
  }
  if (reps) sc.repetitions = *reps;
  sc.validate();
  return sc;
}

int run_explore(const Scenario& sc, const std::string& out, int workers, const std::string& format) {
  ensure_writable_dir(out);
  const SuiteResult res = run_suite(sc, workers, [](const RunMetrics& m) {
    std::cerr << "  " << to_string(m.planner) << " seed " << m.seed << ": " << fixed(m.coverage_at_horizon, 1)
              << " m2 at horizon (" << m.log.end_reason << ")\n";
  });
  const auto files = write_suite(res, out);
  if (format == "csv") {
    std::cout << "planner,runs,coverage_rate_m2_per_min,coverage_at_horizon_m2,time_to_95_min,mean_solve_s\n";
  }
  for (PlannerKind p : sc.planners) {
    const auto rate = res.column(p, &RunMetrics::coverage_rate);
    const auto hor = res.column(p, &RunMetrics::coverage_at_horizon);
    const auto t95 = res.column(p, &RunMetrics::time_to_95);
    const auto solve = res.column(p, &RunMetrics::mean_solve_seconds);
    if (format == "csv") {
      std::cout << to_string(p) << ',' << rate.size() << ',' << fixed(stats::mean(rate), 3) << ','
                << fixed(stats::mean(hor), 3) << ',' << fixed(stats::mean(t95), 3) << ','
                << fixed(stats::mean(solve), 4) << '\n';
    } else {
      std::cout << to_string(p) << ": rate " << fixed(stats::mean(rate), 1) << " (" << fixed(stats::sample_std(rate), 1)
                << ") m2/min, horizon coverage " << fixed(stats::mean(hor), 1) << " m2, t95 "
                << fixed(stats::mean(t95), 2) << " min, solver " << fixed(stats::mean(solve), 4) << " s/episode\n";
    }
  }
  std::cerr << files.size() << " files written to " << out << '\n';
  return 0;
}

int run_sensitivity_cmd(const Scenario& sc, const std::string& out, int workers, const std::string& format) {
  ensure_writable_dir(out);
  const SensitivityResult res = run_sensitivity(sc, workers);
  write_sensitivity(res, out);
  if (format == "csv") std::cout << "objective,n,q1,median,q3,mean\n";
  for (const auto& [label, b] : {std::pair{"fig", res.fig}, std::pair{"exp", res.exp}}) {
    if (format == "csv") {
      std::cout << label << ',' << b.n << ',' << fixed(b.q1) << ',' << fixed(b.median) << ',' << fixed(b.q3) << ','
                << fixed(b.mean) << '\n';
    } else {
      std::cout << label << ": n=" << b.n << " q1=" << fixed(b.q1, 4) << " median=" << fixed(b.median, 4)
                << " q3=" << fixed(b.q3, 4) << " mean=" << fixed(b.mean, 4) << " rad\n";
    }
  }
  return 0;
}

struct ExpectedIgArgs {
  std::string instance;
  std::string scenario;
  double at = 300.0;
  double horizon = 200.0;
  std::string planners = "greedy,op,figop";
  std::string out;
};

int run_expected_ig(const ExpectedIgArgs& a, std::optional<std::int64_t> seed) {
  FigOpGraph graph;
  if (!a.instance.empty()) {
    graph = load_instance(a.instance).graph;
  } else if (!a.scenario.empty()) {
    Scenario sc = load_scenario(a.scenario);
    const std::uint64_t s = static_cast<std::uint64_t>(seed.value_or(sc.seed_base));
    const Environment env = sc.environment.build(s);
    MissionConfig cfg = sc.mission_for(PlannerKind::figop, 0);
    cfg.rng_seed = s;
    Mission mission(env, cfg);
    std::optional<FigOpGraph> captured;
    mission.on_plan = [&](const PlanSnapshot& snap) {
      if (!captured && snap.t >= a.at) captured = snap.graph;
    };
    mission.run();
    if (!captured) throw std::runtime_error("mission ended before t = " + fixed(a.at, 1) + " s; nothing to snapshot");
    graph = *captured;
  } else {
    throw ParameterError("expected-ig needs an instance file or --scenario");
  }
  std::vector<CurvePlanner> planners;
  for (const auto& p : split_list(a.planners)) planners.push_back(curve_planner_from_string(p));
  ExpectedIgOptions opts;
  opts.horizon = a.horizon;
  const auto curves = expected_ig_curves(graph, planners, opts);
  if (curves.empty()) std::cerr << "warning: snapshot has no frontier nodes; the table is empty\n";

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw std::runtime_error("cannot write " + a.out);
  }
  std::ostream& os = a.out.empty() ? std::cout : file;
  os << "planner,cost_m,cumulative_ig\n";
  for (const auto& c : curves) {
    for (const auto& [cost, ig] : c.points) os << c.planner << ',' << fixed(cost) << ',' << fixed(ig) << '\n';
  }
  return 0;
}

struct GenEnvArgs {
  std::string kind = "maze";
  int width = 20;
  int height = 20;
  int rooms = 8;
  std::string out;
};

int run_gen_env(const GenEnvArgs& a, std::optional<std::int64_t> seed) {
  EnvironmentSpec spec;
  spec.kind = a.kind;
  spec.maze_width = a.width;
  spec.maze_height = a.height;
  spec.subway_rooms = a.rooms;
  const Environment env = spec.build(static_cast<std::uint64_t>(seed.value_or(0)));
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw std::runtime_error("cannot write " + a.out);
  }
  write_grid(a.out.empty() ? std::cout : file, env.truth);
  std::cerr << env.descriptor << ": " << env.truth.width << "x" << env.truth.height << " cells, free area "
            << fixed(env.free_area, 1) << " m2\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frontloaded information gain orienteering planner and exploration benchmark"};
  app.require_subcommand(1);
  std::string format = "pretty";
  std::optional<std::int64_t> seed;
  int workers = 1;
  std::string planner;
  std::string scenario;
  std::string out = "results";
  std::optional<int> reps;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "pretty"}));
  };

  SolveArgs solve;
  auto* c_solve = app.add_subcommand("solve", "Solve an instance file");
  c_solve->add_option("instance", solve.instance, "Instance file")->required();
  c_solve->add_option("--objective", solve.objective, "fig, op or exp");
  c_solve->add_option("--solver", solve.solver, "gls, greedy or brute");
  c_solve->add_option("--k1", solve.k1);
  c_solve->add_option("--k2", solve.k2);
  c_solve->add_option("--k3", solve.k3);
  c_solve->add_option("--gamma", solve.gamma);
  c_solve->add_option("--k", solve.k, "Exponential discount scale");
  c_solve->add_option("--budget", solve.budget, "Override the instance budget");
  c_solve->add_option("--seed", solve.seed);
  c_solve->add_option("--time-limit", solve.time_limit, "Seconds");
  c_solve->add_option("--iterations", solve.iterations, "GLS penalization rounds");
  add_format(c_solve);

  auto* c_explore = app.add_subcommand("explore", "Run an exploration suite");
  c_explore->add_option("--scenario", scenario)->required();
  c_explore->add_option("--out", out);
  c_explore->add_option("--seed", seed, "Override seed_base");
  c_explore->add_option("--planner", planner, "Comma separated planners to run");
  c_explore->add_option("--workers", workers)->check(CLI::PositiveNumber);
  c_explore->add_option("--repetitions", reps);
  add_format(c_explore);

  ExpectedIgArgs eig;
  auto* c_eig = app.add_subcommand("expected-ig", "Cumulative information gain against path cost");
  c_eig->add_option("instance", eig.instance, "Instance file (frozen graph)");
  c_eig->add_option("--scenario", eig.scenario, "Snapshot a FIG-OP mission of this scenario instead");
  c_eig->add_option("--at", eig.at, "Snapshot time in seconds");
  c_eig->add_option("--seed", seed);
  c_eig->add_option("--horizon", eig.horizon, "Meters");
  c_eig->add_option("--planner", eig.planners, "Comma separated: greedy, op, figop, exp");
  c_eig->add_option("--out", eig.out, "CSV file (stdout if omitted)");

  auto* c_sens = app.add_subcommand("sensitivity", "Heading sensitivity of FIG vs EXP under risk noise");
  c_sens->add_option("--scenario", scenario)->required();
  c_sens->add_option("--out", out);
  c_sens->add_option("--seed", seed, "Override seed_base");
  c_sens->add_option("--workers", workers)->check(CLI::PositiveNumber);
  c_sens->add_option("--repetitions", reps);
  add_format(c_sens);

  GenEnvArgs gen;
  auto* c_gen = app.add_subcommand("gen-env", "Write a generated environment as a grid file");
  c_gen->add_option("--kind", gen.kind)->check(CLI::IsMember({"maze", "subway", "junction", "cross", "room"}));
  c_gen->add_option("--seed", seed);
  c_gen->add_option("--width", gen.width, "Maze lattice width");
  c_gen->add_option("--height", gen.height, "Maze lattice height");
  c_gen->add_option("--rooms", gen.rooms, "Subway room count");
  c_gen->add_option("--out", gen.out, "Grid file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*c_solve) return run_solve(solve, format);
    if (*c_explore) return run_explore(scenario_with_overrides(scenario, seed, planner, reps), out, workers, format);
    if (*c_eig) return run_expected_ig(eig, seed);
    if (*c_sens) return run_sensitivity_cmd(scenario_with_overrides(scenario, seed, "", reps), out, workers, format);
    if (*c_gen) return run_gen_env(gen, seed);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
