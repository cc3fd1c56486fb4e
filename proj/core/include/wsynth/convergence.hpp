#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wsynth/dispatch.hpp"
#include "wsynth/sampler.hpp"
#include "wsynth/stats.hpp"

namespace wsynth {

// Relative standard error of the mean. Requires n >= 2 and a nonzero mean;
// callers exclude zero-mean metrics instead of dividing by zero.
double relative_standard_error(const OnlineStats& stats);

struct ConvergenceOptions {
  double threshold = 0.01;  // stop when every tracked metric's RSE <= this
  int min_years = 30;
  int max_years = 1000;
  std::uint64_t master_seed = 0;
  int threads = 1;
  int trajectory_stride = 10;
};

struct MetricReport {
  std::string name;
  std::size_t n = 0;
  double mean = 0.0;
  double rse = 0.0;
  bool excluded = false;  // |mean| ~ 0, not normalizable
  std::vector<std::pair<int, double>> trajectory;  // (n, rse) samples
};

struct YearRecord {
  int index = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> metrics;
  double objective = 0.0;
};

struct ConvergenceReport {
  bool converged = false;
  int n_years = 0;
  std::vector<MetricReport> metrics;
  std::vector<YearRecord> years;
};

// Generate -> dispatch -> update statistics until every tracked metric's
// RSE falls below the threshold (with n >= min_years), or max_years is hit.
// Statistics are reduced in seed order regardless of how many worker
// threads run the dispatches, so the result depends only on the inputs and
// the master seed.
ConvergenceReport run_until_converged(const SpectralModel& model,
                                      const DispatchProblem& problem,
                                      const ConvergenceOptions& options);

void write_convergence_report(const ConvergenceReport& report, const std::string& path);
void write_year_records_csv(const ConvergenceReport& report, const std::string& path);

}  // namespace wsynth
