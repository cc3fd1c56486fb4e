#include "wsynth/convergence.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wsynth/rng.hpp"

namespace wsynth {

using nlohmann::json;

double relative_standard_error(const OnlineStats& stats) {
  if (stats.n < 2) throw std::invalid_argument("relative_standard_error: need n >= 2");
  if (stats.mean == 0.0) throw std::invalid_argument("relative_standard_error: zero mean");
  return std::sqrt(stats.variance() / static_cast<double>(stats.n)) / std::fabs(stats.mean);
}

namespace {

struct Tracker {
  std::map<std::string, OnlineStats> stats;
  std::map<std::string, std::vector<std::pair<int, double>>> trajectories;

  void update(const std::map<std::string, double>& metrics) {
    for (const auto& [name, value] : metrics) stats[name].update(value);
  }

  // A metric is excluded when its magnitude is negligible: a mean of zero
  // has no relative error, and such metrics (an unused peaker, zero lost
  // load) would otherwise block convergence forever.
  static bool normalizable(const OnlineStats& s) {
    return std::fabs(s.mean) > 1e-9;
  }

  bool all_below(double threshold) const {
    for (const auto& [name, s] : stats) {
      if (s.n < 2) return false;
      if (!normalizable(s)) continue;
      if (relative_standard_error(s) > threshold) return false;
    }
    return true;
  }

  void record_trajectory(int n) {
    for (const auto& [name, s] : stats) {
      if (s.n >= 2 && normalizable(s)) {
        trajectories[name].emplace_back(n, relative_standard_error(s));
      }
    }
  }
};

}  // namespace

ConvergenceReport run_until_converged(const SpectralModel& model,
                                      const DispatchProblem& problem,
                                      const ConvergenceOptions& options) {
  if (options.threshold <= 0.0) throw std::invalid_argument("convergence threshold must be > 0");
  if (options.min_years < 2) throw std::invalid_argument("min_years must be >= 2");
  problem.validate();

  const YearGenerator generator(model);
  const int threads = std::max(1, options.threads);

  ConvergenceReport report;
  Tracker tracker;
  bool warned_excluded = false;

  auto solve_one = [&](int index) -> YearRecord {
    const std::uint64_t seed = derive_stream_seed(options.master_seed,
                                                  static_cast<std::uint64_t>(index));
    const GeneratedYear year = generator.generate(seed);
    const HourlyInputs inputs =
        build_hourly_inputs(problem, year.values, model.series, kHoursPerYear);
    const DispatchResult result = solve_dispatch(problem, inputs, kHoursPerYear);
    const DispatchSummary summary = summarize(problem, result);
    YearRecord rec;
    rec.index = index;
    rec.seed = seed;
    rec.metrics = summary.metrics;
    rec.objective = summary.objective;
    return rec;
  };

  int next_index = 0;
  bool done = false;
  while (!done && next_index < options.max_years) {
    // Dispatch a batch in parallel, then fold results in seed order so the
    // statistics do not depend on completion order.
    const int batch = std::min(threads, options.max_years - next_index);
    std::vector<std::future<YearRecord>> futures;
    futures.reserve(static_cast<std::size_t>(batch));
    for (int i = 0; i < batch; ++i) {
      const int index = next_index + i;
      if (batch == 1) {
        std::promise<YearRecord> p;
        p.set_value(solve_one(index));
        futures.push_back(p.get_future());
      } else {
        futures.push_back(std::async(std::launch::async, solve_one, index));
      }
    }
    for (auto& f : futures) {
      YearRecord rec = f.get();
      if (done) continue;  // converged mid-batch; later years are discarded
      tracker.update(rec.metrics);
      report.years.push_back(std::move(rec));
      const int n = static_cast<int>(report.years.size());
      if (n % options.trajectory_stride == 0) tracker.record_trajectory(n);
      if (n >= options.min_years && tracker.all_below(options.threshold)) {
        report.converged = true;
        done = true;
      }
    }
    next_index += batch;
  }

  report.n_years = static_cast<int>(report.years.size());
  if (!report.converged) {
    std::cerr << "warning: not converged after " << report.n_years << " years\n";
  }

  for (const auto& [name, s] : tracker.stats) {
    MetricReport mr;
    mr.name = name;
    mr.n = s.n;
    mr.mean = s.mean;
    mr.excluded = !Tracker::normalizable(s);
    if (mr.excluded) {
      if (!warned_excluded) {
        std::cerr << "warning: zero-mean metric(s) excluded from the convergence "
                     "criterion (first: " << name << ")\n";
        warned_excluded = true;
      }
      mr.rse = 0.0;
    } else {
      mr.rse = s.n >= 2 ? relative_standard_error(s) : 0.0;
    }
    auto it = tracker.trajectories.find(name);
    if (it != tracker.trajectories.end()) mr.trajectory = it->second;
    report.metrics.push_back(std::move(mr));
  }
  return report;
}

void write_convergence_report(const ConvergenceReport& report, const std::string& path) {
  json j;
  j["converged"] = report.converged;
  j["n_years"] = report.n_years;
  json metrics = json::array();
  for (const auto& m : report.metrics) {
    json jm;
    jm["name"] = m.name;
    jm["n"] = m.n;
    jm["mean"] = m.mean;
    jm["rse"] = m.rse;
    jm["excluded"] = m.excluded;
    json traj = json::array();
    for (const auto& [n, rse] : m.trajectory) traj.push_back({{"n", n}, {"rse", rse}});
    jm["rse_trajectory"] = std::move(traj);
    metrics.push_back(std::move(jm));
  }
  j["metrics"] = std::move(metrics);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void write_year_records_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  // Stable metric column order from the first year.
  std::vector<std::string> names;
  if (!report.years.empty()) {
    for (const auto& [name, value] : report.years.front().metrics) names.push_back(name);
  }
  out << "index,seed,objective";
  for (const auto& n : names) out << "," << n;
  out << "\n";
  char buf[40];
  for (const auto& y : report.years) {
    out << y.index << "," << y.seed;
    std::snprintf(buf, sizeof(buf), ",%.17g", y.objective);
    out << buf;
    for (const auto& n : names) {
      const auto it = y.metrics.find(n);
      std::snprintf(buf, sizeof(buf), ",%.17g", it == y.metrics.end() ? 0.0 : it->second);
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace wsynth
