#include "wsynth/stats.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "wsynth/normal.hpp"

namespace wsynth {

double pairwise_covariance(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  assert(a.size() >= 2);
  const std::size_t n = a.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      acc += 0.5 * (a[i] - a[j]) * (b[i] - b[j]);
    }
  }
  return acc / (static_cast<double>(n) * static_cast<double>(n));
}

double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

double two_pass_covariance(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  const double ma = mean(a);
  const double mb = mean(b);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += (a[i] - ma) * (b[i] - mb);
  return acc / static_cast<double>(n);
}

double correlation(std::span<const double> a, std::span<const double> b) {
  const double cab = two_pass_covariance(a, b);
  const double va = two_pass_covariance(a, a);
  const double vb = two_pass_covariance(b, b);
  if (va <= 0.0 || vb <= 0.0) return 0.0;
  return cab / std::sqrt(va * vb);
}

std::vector<double> autocorrelation(std::span<const double> x, int max_lag) {
  assert(max_lag >= 0 && static_cast<std::size_t>(max_lag) < x.size());
  const std::size_t n = x.size();
  const double m = mean(x);
  double denom = 0.0;
  for (double v : x) denom += (v - m) * (v - m);
  std::vector<double> acf(static_cast<std::size_t>(max_lag) + 1, 0.0);
  if (denom == 0.0) {
    acf[0] = 1.0;
    return acf;
  }
  for (int lag = 0; lag <= max_lag; ++lag) {
    double s = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) {
      s += (x[t] - m) * (x[t + lag] - m);
    }
    acf[static_cast<std::size_t>(lag)] = s / denom;
  }
  return acf;
}

double circular_mean(std::span<const double> angles) {
  double s = 0.0, c = 0.0;
  for (double a : angles) {
    s += std::sin(a);
    c += std::cos(a);
  }
  return std::atan2(s, c);
}

double ks_distance(std::span<const double> a, std::span<const double> b) {
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const std::size_t na = sa.size(), nb = sb.size();
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < na && j < nb) {
    const double x = std::min(sa[i], sb[j]);
    while (i < na && sa[i] <= x) ++i;
    while (j < nb && sb[j] <= x) ++j;
    const double fa = static_cast<double>(i) / static_cast<double>(na);
    const double fb = static_cast<double>(j) / static_cast<double>(nb);
    d = std::max(d, std::fabs(fa - fb));
  }
  return d;
}

double ks_distance_normal(std::span<const double> x) {
  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  const std::size_t n = s.size();
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = norm_cdf(s[i]);
    const double lo = static_cast<double>(i) / static_cast<double>(n);
    const double hi = static_cast<double>(i + 1) / static_cast<double>(n);
    d = std::max(d, std::max(std::fabs(f - lo), std::fabs(f - hi)));
  }
  return d;
}

NormalityTest anderson_darling_normality(std::span<const double> x) {
  NormalityTest out;
  const std::size_t n = x.size();
  if (n < 3) return out;

  std::vector<double> s(x.begin(), x.end());
  std::sort(s.begin(), s.end());
  const double m = mean(s);
  double var = 0.0;
  for (double v : s) var += (v - m) * (v - m);
  var /= static_cast<double>(n - 1);
  if (var <= 0.0) {
    // Degenerate sample: constant data is as non-normal as it gets.
    out.statistic = 1e30;
    out.p_value = 0.0;
    return out;
  }
  const double sd = std::sqrt(var);

  double a2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (s[i] - m) / sd;
    double f = norm_cdf(z);
    f = std::clamp(f, 1e-300, 1.0 - 1e-16);
    const double fr = std::clamp(norm_cdf((s[n - 1 - i] - m) / sd), 1e-300, 1.0 - 1e-16);
    a2 += (2.0 * static_cast<double>(i) + 1.0) * (std::log(f) + std::log1p(-fr));
  }
  a2 = -static_cast<double>(n) - a2 / static_cast<double>(n);

  // Small-sample adjustment and p-value for the estimated-parameters case.
  const double nn = static_cast<double>(n);
  const double a = a2 * (1.0 + 0.75 / nn + 2.25 / (nn * nn));
  out.statistic = a;
  if (a >= 0.6) {
    out.p_value = std::exp(1.2937 - 5.709 * a + 0.0186 * a * a);
  } else if (a >= 0.34) {
    out.p_value = std::exp(0.9177 - 4.279 * a - 1.38 * a * a);
  } else if (a >= 0.2) {
    out.p_value = 1.0 - std::exp(-8.318 + 42.796 * a - 59.938 * a * a);
  } else {
    out.p_value = 1.0 - std::exp(-13.436 + 101.14 * a - 223.73 * a * a);
  }
  out.p_value = std::clamp(out.p_value, 0.0, 1.0);
  return out;
}

}  // namespace wsynth
