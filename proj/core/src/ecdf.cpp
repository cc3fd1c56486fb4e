#include "wsynth/ecdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wsynth/normal.hpp"

namespace wsynth {

EmpiricalCdf EmpiricalCdf::fit(std::span<const double> series) {
  if (series.empty()) throw std::invalid_argument("ecdf: empty input series");
  for (double v : series) {
    if (!std::isfinite(v)) throw std::invalid_argument("ecdf: non-finite value in series");
  }
  EmpiricalCdf cdf;
  cdf.sorted_.assign(series.begin(), series.end());
  std::sort(cdf.sorted_.begin(), cdf.sorted_.end());
  cdf.build_knots();
  return cdf;
}

EmpiricalCdf EmpiricalCdf::from_sorted(std::vector<double> sorted) {
  if (sorted.empty()) throw std::invalid_argument("ecdf: empty sorted values");
  if (!std::is_sorted(sorted.begin(), sorted.end())) {
    throw std::invalid_argument("ecdf: persisted values not sorted");
  }
  EmpiricalCdf cdf;
  cdf.sorted_ = std::move(sorted);
  cdf.build_knots();
  return cdf;
}

void EmpiricalCdf::build_knots() {
  const std::size_t n = sorted_.size();
  z_knots_.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    z_knots_[r] = norm_ppf((static_cast<double>(r) + 0.5) / static_cast<double>(n));
  }
}

double EmpiricalCdf::raw(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::plotting_position(double x) const {
  const double n = static_cast<double>(sorted_.size());
  const auto lo = std::lower_bound(sorted_.begin(), sorted_.end(), x);
  const auto hi = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  // Mid-rank for ties: average of the below-count and the at-or-below count.
  const double mid = (static_cast<double>(lo - sorted_.begin()) +
                      static_cast<double>(hi - sorted_.begin())) / 2.0;
  const double u = mid / n;
  return std::clamp(u, 0.5 / n, 1.0 - 0.5 / n);
}

double EmpiricalCdf::gaussianize_value(double x) const {
  return norm_ppf(plotting_position(x));
}

std::vector<double> EmpiricalCdf::gaussianize(std::span<const double> series) const {
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = gaussianize_value(series[i]);
  return out;
}

double EmpiricalCdf::degaussianize_value(double z) const {
  const std::size_t n = sorted_.size();
  // Exact knot hit: gaussianize produced this very double, return the
  // matching order statistic without going through Phi.
  const auto kit = std::lower_bound(z_knots_.begin(), z_knots_.end(), z);
  if (kit != z_knots_.end() && *kit == z) {
    return sorted_[static_cast<std::size_t>(kit - z_knots_.begin())];
  }

  const double u = norm_cdf(z);
  const double nn = static_cast<double>(n);
  if (u <= 0.5 / nn) return sorted_.front();
  if (u >= 1.0 - 0.5 / nn) return sorted_.back();
  // u in ((r + 0.5)/n) terms: find r with p_r <= u < p_{r+1}.
  const double pos = u * nn - 0.5;  // in [0, n-1)
  const std::size_t r = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(r);
  if (r + 1 >= n) return sorted_.back();
  return sorted_[r] + frac * (sorted_[r + 1] - sorted_[r]);
}

std::vector<double> EmpiricalCdf::degaussianize(std::span<const double> series) const {
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = degaussianize_value(series[i]);
  return out;
}

}  // namespace wsynth
