#pragma once

#include <span>
#include <vector>

namespace wsynth {

// Empirical distribution of one series. Stores the sorted sample together
// with the normal-quantile image of the plotting positions (r - 0.5)/n, so
// the gaussianize/degaussianize pair round-trips observed values exactly.
class EmpiricalCdf {
 public:
  EmpiricalCdf() = default;

  // Throws std::invalid_argument on empty input or non-finite values.
  static EmpiricalCdf fit(std::span<const double> series);

  // Raw ECDF: fraction of observations <= x.
  double raw(double x) const;

  // Plotting-position ECDF with mid-ranks for ties, clamped to
  // [0.5/n, 1 - 0.5/n] so the normal quantile stays finite.
  double plotting_position(double x) const;

  // z = norminv(F~(x)) applied elementwise.
  double gaussianize_value(double x) const;
  std::vector<double> gaussianize(std::span<const double> series) const;

  // x = F^-1(Phi(z)): linear interpolation between order statistics at
  // plotting positions, clamped to the observed range. Exact at the stored
  // quantile knots, so observed values of a tie-free sample round-trip.
  double degaussianize_value(double z) const;
  std::vector<double> degaussianize(std::span<const double> series) const;

  std::size_t size() const { return sorted_.size(); }
  const std::vector<double>& sorted_values() const { return sorted_; }
  double min() const { return sorted_.front(); }
  double max() const { return sorted_.back(); }

  // Reconstruct from persisted sorted values (validated).
  static EmpiricalCdf from_sorted(std::vector<double> sorted);

 private:
  void build_knots();

  std::vector<double> sorted_;
  std::vector<double> z_knots_;  // norm_ppf((r - 0.5)/n), r = 1..n
};

}  // namespace wsynth
