#pragma once

// Independent reference implementations used only by tests. Everything here
// deliberately avoids the production code paths it is checking.

#include <complex>
#include <span>
#include <vector>

namespace oracles {

// Direct O(N^2) DFT summation, bins 0..N/2 inclusive.
std::vector<std::complex<double>> naive_dft_half(std::span<const double> x);

// Direct full-length inverse from a half spectrum via explicit conjugate
// extension; returns the complex result so tests can assert realness.
std::vector<std::complex<double>> naive_inverse_full(
    std::span<const std::complex<double>> half, int n);

// Divisor-n covariance, two-pass.
double covariance_two_pass(std::span<const double> a, std::span<const double> b);

// Dense Big-M tableau simplex over the standard form with explicit slack
// rows for upper bounds. Small and slow; for tiny instances only.
struct LpOracleResult {
  bool optimal = false;
  bool feasible = true;
  double objective = 0.0;
  std::vector<double> x;
};
LpOracleResult solve_lp_tableau(int n_rows,
                                const std::vector<std::vector<double>>& dense_a,
                                const std::vector<double>& b,
                                const std::vector<double>& c,
                                const std::vector<double>& upper);

// Exhaustive best 2-partition of p series (p <= 16) under the objective
// sum of squared RMSE to the optimal medoid of each part.
struct PartitionOracle {
  double objective = 0.0;
  std::vector<int> assignment;
};
PartitionOracle best_two_partition(const std::vector<std::vector<double>>& series);

// Exhaustive medoid of all series: index minimizing summed squared RMSE.
int exhaustive_medoid(const std::vector<std::vector<double>>& series);

}  // namespace oracles
