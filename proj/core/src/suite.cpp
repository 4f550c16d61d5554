#include "figop/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "figop/errors.hpp"

namespace figop {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Round-trip exact formatting keeps aggregates recomputable from the rows.
std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

}  // namespace

double coverage_at(const CoverageLog& log, double t) {
  const auto& s = log.samples;
  if (s.empty()) return 0.0;
  if (t <= s.front().t) return s.front().coverage;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (t <= s[i].t) {
      const double span = s[i].t - s[i - 1].t;
      if (span <= 0.0) return s[i].coverage;
      const double f = (t - s[i - 1].t) / span;
      return s[i - 1].coverage + f * (s[i].coverage - s[i - 1].coverage);
    }
  }
  return s.back().coverage;
}

double time_to_coverage(const CoverageLog& log, double target) {
  const auto& s = log.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].coverage < target) continue;
    if (i == 0) return s[0].t;
    const double rise = s[i].coverage - s[i - 1].coverage;
    const double f = rise > 0.0 ? (target - s[i - 1].coverage) / rise : 1.0;
    return s[i - 1].t + f * (s[i].t - s[i - 1].t);
  }
  return kNaN;
}

RunMetrics compute_metrics(const CoverageLog& log, double free_area, const Scenario& sc) {
  RunMetrics m;
  m.free_area = free_area;
  const double t_end = sc.mission.mission_time;
  m.coverage_rate = t_end > 0.0 ? coverage_at(log, t_end) / (t_end / 60.0) : 0.0;
  m.coverage_at_horizon = coverage_at(log, sc.horizon());
  m.time_to_95 = time_to_coverage(log, 0.95 * free_area) / 60.0;
  m.heading_deltas = heading_sensitivity(log, sc.window());
  m.heading_delta_mean = stats::mean(m.heading_deltas);
  m.heading_delta_median = stats::median(m.heading_deltas);
  m.mean_solve_seconds = stats::mean(log.solve_seconds);
  m.log = log;
  return m;
}

std::vector<const RunMetrics*> SuiteResult::runs_of(PlannerKind p) const {
  std::vector<const RunMetrics*> out;
  for (const auto& r : runs) {
    if (r.planner == p) out.push_back(&r);
  }
  return out;
}

std::vector<double> SuiteResult::column(PlannerKind p, double RunMetrics::*field) const {
  std::vector<double> out;
  for (const auto* r : runs_of(p)) out.push_back(r->*field);
  return out;
}

SuiteResult run_suite(const Scenario& sc, int workers, const SuiteProgress& progress) {
  sc.validate();
  struct Job {
    std::size_t planner_index;
    int run;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < sc.planners.size(); ++p) {
    for (int r = 0; r < sc.repetitions; ++r) jobs.push_back({p, r});
  }
  std::vector<RunMetrics> results(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        const Job& job = jobs[j];
        const PlannerKind planner = sc.planners[job.planner_index];
        const std::uint64_t seed = sc.seed_for_run(job.run);
        const Environment env = sc.environment.build(seed);
        const CoverageLog log = run_mission(env, sc.mission_for(planner, job.run));
        RunMetrics m = compute_metrics(log, env.free_area, sc);
        m.planner = planner;
        m.seed = seed;
        results[j] = std::move(m);
        if (progress) {
          std::lock_guard lock(progress_mutex);
          progress(results[j]);
        }
      } catch (...) {
        errors[j] = std::current_exception();
      }
    }
  };
  const int n_threads = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(1, jobs.size())));
  std::vector<std::thread> threads;
  for (int t = 1; t < n_threads; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  // Jobs are laid out planner-major, seed-minor, so index order is the sorted order.
  return SuiteResult{sc, std::move(results)};
}

void ensure_writable_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw std::runtime_error("output directory " + dir.string() + " cannot be created");
  }
  const auto probe = dir / ".figop_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw std::runtime_error("output directory " + dir.string() + " is not writable");
  }
  std::filesystem::remove(probe, ec);
}

std::vector<std::filesystem::path> write_suite(const SuiteResult& result, const std::filesystem::path& out_dir) {
  ensure_writable_dir(out_dir);
  const Scenario& sc = result.scenario;
  std::vector<std::filesystem::path> written;

  for (const auto& r : result.runs) {
    const auto p = out_dir / (sc.name + "_" + std::string(to_string(r.planner)) + "_seed" + std::to_string(r.seed) + ".csv");
    auto out = open_out(p);
    write_coverage_csv(out, r.log);
    written.push_back(p);
  }

  {
    const auto p = out_dir / (sc.name + "_summary.csv");
    auto out = open_out(p);
    out << "row_type,planner,seed,free_area_m2,coverage_rate_m2_per_min,coverage_at_horizon_m2,time_to_95_min,"
           "heading_delta_mean_rad,heading_delta_median_rad,end_reason\n";
    static constexpr double RunMetrics::*kFields[] = {&RunMetrics::free_area, &RunMetrics::coverage_rate,
                                                      &RunMetrics::coverage_at_horizon, &RunMetrics::time_to_95,
                                                      &RunMetrics::heading_delta_mean,
                                                      &RunMetrics::heading_delta_median};
    for (PlannerKind planner : sc.planners) {
      const auto runs = result.runs_of(planner);
      for (const auto* r : runs) {
        out << "run," << to_string(planner) << ',' << r->seed;
        for (auto f : kFields) out << ',' << num(r->*f);
        out << ',' << r->log.end_reason << '\n';
      }
      for (const char* kind : {"mean", "std"}) {
        out << kind << ',' << to_string(planner) << ',';
        for (auto f : kFields) {
          const auto col = result.column(planner, f);
          out << ',' << num(kind[0] == 'm' ? stats::mean(col) : stats::sample_std(col));
        }
        out << ",\n";
      }
    }
    written.push_back(p);
  }

  {
    const auto p = out_dir / (sc.name + "_coverage_curves.csv");
    auto out = open_out(p);
    out << "planner,t_s,mean,std\n";
    std::vector<double> times;
    for (long k = 0; static_cast<double>(k) * sc.curve_step < sc.mission.mission_time - 1e-9; ++k) {
      times.push_back(static_cast<double>(k) * sc.curve_step);
    }
    times.push_back(sc.mission.mission_time);
    for (PlannerKind planner : sc.planners) {
      const auto runs = result.runs_of(planner);
      for (double t : times) {
        std::vector<double> vals;
        for (const auto* r : runs) vals.push_back(coverage_at(r->log, t));
        out << to_string(planner) << ',' << num(t) << ',' << num(stats::mean(vals)) << ','
            << num(stats::sample_std(vals)) << '\n';
      }
    }
    written.push_back(p);
  }
  return written;
}

SensitivityResult run_sensitivity(Scenario sc, int workers) {
  if (!(sc.mission.risk_noise.sigma >= 0.0)) throw ParameterError("noise sigma must be >= 0");
  sc.planners = {PlannerKind::figop, PlannerKind::exp};
  SensitivityResult res;
  res.suite = run_suite(sc, workers);
  for (const auto* r : res.suite.runs_of(PlannerKind::figop)) {
    res.fig_deltas.insert(res.fig_deltas.end(), r->heading_deltas.begin(), r->heading_deltas.end());
  }
  for (const auto* r : res.suite.runs_of(PlannerKind::exp)) {
    res.exp_deltas.insert(res.exp_deltas.end(), r->heading_deltas.begin(), r->heading_deltas.end());
  }
  res.fig = stats::box_stats(res.fig_deltas);
  res.exp = stats::box_stats(res.exp_deltas);
  return res;
}

std::vector<std::filesystem::path> write_sensitivity(const SensitivityResult& result,
                                                     const std::filesystem::path& out_dir) {
  ensure_writable_dir(out_dir);
  const Scenario& sc = result.suite.scenario;
  std::vector<std::filesystem::path> written;
  {
    const auto p = out_dir / (sc.name + "_heading_deltas.csv");
    auto out = open_out(p);
    out << "objective,seed,index,delta_rad\n";
    for (PlannerKind planner : {PlannerKind::figop, PlannerKind::exp}) {
      const char* label = planner == PlannerKind::figop ? "fig" : "exp";
      for (const auto* r : result.suite.runs_of(planner)) {
        for (std::size_t i = 0; i < r->heading_deltas.size(); ++i) {
          out << label << ',' << r->seed << ',' << i << ',' << num(r->heading_deltas[i]) << '\n';
        }
      }
    }
    written.push_back(p);
  }
  {
    const auto p = out_dir / (sc.name + "_heading_stats.csv");
    auto out = open_out(p);
    out << "objective,seed,n,q1,median,q3,mean\n";
    auto row = [&](const char* label, const std::string& seed, const stats::BoxStats& b) {
      out << label << ',' << seed << ',' << b.n << ',' << num(b.q1) << ',' << num(b.median) << ',' << num(b.q3)
          << ',' << num(b.mean) << '\n';
    };
    const auto fig = result.suite.runs_of(PlannerKind::figop);
    const auto exp = result.suite.runs_of(PlannerKind::exp);
    // Paired seeds: row i of each objective comes from the same environment and streams.
    for (std::size_t i = 0; i < fig.size(); ++i) {
      row("fig", std::to_string(fig[i]->seed), stats::box_stats(fig[i]->heading_deltas));
      row("exp", std::to_string(exp[i]->seed), stats::box_stats(exp[i]->heading_deltas));
    }
    row("fig", "all", result.fig);
    row("exp", "all", result.exp);
    written.push_back(p);
  }
  return written;
}

}  // namespace figop
