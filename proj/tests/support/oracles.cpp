#include "support/oracles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracles {

std::vector<std::complex<double>> naive_dft_half(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  const int m = n / 2 + 1;
  std::vector<std::complex<double>> out(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      const double angle = -2.0 * M_PI * static_cast<double>(j) * static_cast<double>(k) /
                           static_cast<double>(n);
      acc += x[static_cast<std::size_t>(j)] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

std::vector<std::complex<double>> naive_inverse_full(
    std::span<const std::complex<double>> half, int n) {
  // Conjugate-symmetric extension to the full spectrum.
  std::vector<std::complex<double>> full(static_cast<std::size_t>(n));
  const int m = static_cast<int>(half.size());
  for (int k = 0; k < m; ++k) full[static_cast<std::size_t>(k)] = half[static_cast<std::size_t>(k)];
  for (int k = m; k < n; ++k) {
    full[static_cast<std::size_t>(k)] = std::conj(half[static_cast<std::size_t>(n - k)]);
  }
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    std::complex<double> acc(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      const double angle = 2.0 * M_PI * static_cast<double>(t) * static_cast<double>(k) /
                           static_cast<double>(n);
      acc += full[static_cast<std::size_t>(k)] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[static_cast<std::size_t>(t)] = acc / static_cast<double>(n);
  }
  return out;
}

double covariance_two_pass(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += (a[i] - ma) * (b[i] - mb);
  return acc / static_cast<double>(n);
}

LpOracleResult solve_lp_tableau(int n_rows, const std::vector<std::vector<double>>& dense_a,
                                const std::vector<double>& b, const std::vector<double>& c,
                                const std::vector<double>& upper) {
  // Expand finite upper bounds into explicit slack rows, then run a plain
  // Big-M tableau simplex with Bland's rule.
  const int n = static_cast<int>(c.size());
  int extra = 0;
  for (double u : upper) {
    if (std::isfinite(u)) ++extra;
  }
  const int m = n_rows + extra;
  const int total = n + extra + m;  // structural + bound slacks + artificials

  std::vector<std::vector<double>> t(static_cast<std::size_t>(m),
                                     std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
  // Equality rows.
  for (int r = 0; r < n_rows; ++r) {
    for (int j = 0; j < n; ++j) t[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = dense_a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
    t[static_cast<std::size_t>(r)].back() = b[static_cast<std::size_t>(r)];
  }
  // Upper-bound rows x_j + s = u_j.
  int row = n_rows, slack = n;
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(upper[static_cast<std::size_t>(j)])) continue;
    t[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] = 1.0;
    t[static_cast<std::size_t>(row)][static_cast<std::size_t>(slack)] = 1.0;
    t[static_cast<std::size_t>(row)].back() = upper[static_cast<std::size_t>(j)];
    ++row;
    ++slack;
  }
  // Flip rows to keep b nonnegative, then add artificials.
  for (int r = 0; r < m; ++r) {
    if (t[static_cast<std::size_t>(r)].back() < 0.0) {
      for (auto& v : t[static_cast<std::size_t>(r)]) v = -v;
    }
    t[static_cast<std::size_t>(r)][static_cast<std::size_t>(n + extra + r)] = 1.0;
  }

  double big_m = 1.0;
  for (double v : c) big_m = std::max(big_m, std::fabs(v));
  big_m *= 1e7;

  std::vector<double> cost(static_cast<std::size_t>(total), 0.0);
  for (int j = 0; j < n; ++j) cost[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)];
  for (int r = 0; r < m; ++r) cost[static_cast<std::size_t>(n + extra + r)] = big_m;

  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) basis[static_cast<std::size_t>(r)] = n + extra + r;

  // Reduced-cost row maintained implicitly via the basis cost vector.
  const int max_iter = 200000;
  for (int iter = 0; iter < max_iter; ++iter) {
    // z_j - c_j using the current tableau (columns are B^-1 A_j already).
    int enter = -1;
    for (int j = 0; j < total; ++j) {
      double zj = 0.0;
      for (int r = 0; r < m; ++r) {
        zj += cost[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])] *
              t[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
      }
      if (zj - cost[static_cast<std::size_t>(j)] > 1e-7) {  // Bland: first improving index
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      LpOracleResult res;
      res.x.assign(static_cast<std::size_t>(n), 0.0);
      double infeas = 0.0;
      for (int r = 0; r < m; ++r) {
        const int j = basis[static_cast<std::size_t>(r)];
        const double v = t[static_cast<std::size_t>(r)].back();
        if (j < n) res.x[static_cast<std::size_t>(j)] = v;
        if (j >= n + extra) infeas += std::fabs(v);
      }
      res.feasible = infeas < 1e-6;
      res.optimal = res.feasible;
      for (int j = 0; j < n; ++j) res.objective += c[static_cast<std::size_t>(j)] * res.x[static_cast<std::size_t>(j)];
      return res;
    }

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < m; ++r) {
      const double a = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(enter)];
      if (a > 1e-11) {
        const double ratio = t[static_cast<std::size_t>(r)].back() / a;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && leave >= 0 &&
             basis[static_cast<std::size_t>(r)] < basis[static_cast<std::size_t>(leave)])) {
          best_ratio = ratio;
          leave = r;
        }
      }
    }
    if (leave < 0) {
      LpOracleResult res;
      res.optimal = false;
      res.feasible = true;  // unbounded
      return res;
    }

    const double pivot = t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(enter)];
    for (auto& v : t[static_cast<std::size_t>(leave)]) v /= pivot;
    for (int r = 0; r < m; ++r) {
      if (r == leave) continue;
      const double f = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(enter)];
      if (f == 0.0) continue;
      for (int j = 0; j <= total; ++j) {
        t[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
            f * t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(j)];
      }
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }
  throw std::runtime_error("lp oracle: iteration limit");
}

namespace {

double rmse2(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc / static_cast<double>(a.size());
}

double partition_cost(const std::vector<std::vector<double>>& series,
                      const std::vector<int>& members) {
  // Optimal medoid of this member set under summed squared RMSE.
  double best = std::numeric_limits<double>::infinity();
  for (int cand : members) {
    double cost = 0.0;
    for (int other : members) cost += rmse2(series[static_cast<std::size_t>(cand)], series[static_cast<std::size_t>(other)]);
    best = std::min(best, cost);
  }
  return best;
}

}  // namespace

PartitionOracle best_two_partition(const std::vector<std::vector<double>>& series) {
  const int p = static_cast<int>(series.size());
  if (p < 2 || p > 16) throw std::runtime_error("best_two_partition: need 2..16 series");
  PartitionOracle best;
  best.objective = std::numeric_limits<double>::infinity();
  // Fix series 0 in part A to avoid double-counting mirrored assignments.
  for (unsigned mask = 0; mask < (1u << (p - 1)); ++mask) {
    std::vector<int> a{0}, bset;
    for (int s = 1; s < p; ++s) {
      if (mask & (1u << (s - 1))) {
        a.push_back(s);
      } else {
        bset.push_back(s);
      }
    }
    if (bset.empty()) continue;
    const double cost = partition_cost(series, a) + partition_cost(series, bset);
    if (cost < best.objective) {
      best.objective = cost;
      best.assignment.assign(static_cast<std::size_t>(p), 1);
      for (int s : a) best.assignment[static_cast<std::size_t>(s)] = 0;
    }
  }
  return best;
}

int exhaustive_medoid(const std::vector<std::vector<double>>& series) {
  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t cand = 0; cand < series.size(); ++cand) {
    double cost = 0.0;
    for (std::size_t other = 0; other < series.size(); ++other) {
      cost += rmse2(series[cand], series[other]);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = static_cast<int>(cand);
    }
  }
  return best;
}

}  // namespace oracles
