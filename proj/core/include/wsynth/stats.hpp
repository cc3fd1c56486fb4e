#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wsynth {

// Pairwise-difference covariance estimator,
//   (1/n^2) * sum_i sum_j 1/2 (a_i - a_j)(b_i - b_j),
// algebraically equal to the divisor-n sample covariance.
double pairwise_covariance(std::span<const double> a, std::span<const double> b);

// Conventional two-pass divisor-n covariance; the independent route used to
// cross-check pairwise_covariance.
double two_pass_covariance(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> x);

// Pearson correlation; returns 0 when either side is constant.
double correlation(std::span<const double> a, std::span<const double> b);

// Biased sample autocorrelation at lags 0..max_lag.
std::vector<double> autocorrelation(std::span<const double> x, int max_lag);

// Circular mean of angles in radians, in (-pi, pi].
double circular_mean(std::span<const double> angles);

// Streaming mean/variance (Welford). variance() uses divisor n-1.
struct OnlineStats {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void update(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  double variance() const {
    return n >= 2 ? m2 / static_cast<double>(n - 1) : 0.0;
  }
};

// Two-sample Kolmogorov-Smirnov distance sup|F_a - F_b|.
double ks_distance(std::span<const double> a, std::span<const double> b);

// One-sample KS distance of `x` against the standard normal CDF.
double ks_distance_normal(std::span<const double> x);

// Anderson-Darling normality test with estimated mean and variance
// (case 3); p-value per D'Agostino & Stephens (1986).
struct NormalityTest {
  double statistic = 0.0;  // A^2 adjusted for sample size
  double p_value = 1.0;
};
NormalityTest anderson_darling_normality(std::span<const double> x);

}  // namespace wsynth
