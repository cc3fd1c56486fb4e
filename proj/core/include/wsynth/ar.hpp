#pragma once

#include <span>
#include <vector>

namespace wsynth {

// AR(p) model x_t = c + sum_i phi_i * (x_{t-i} - c) + e_t fitted by
// Yule-Walker / Levinson-Durbin on the biased autocovariance.
struct ArModel {
  std::vector<double> phi;  // coefficients, phi[0] is lag 1
  double mean = 0.0;
  double noise_variance = 0.0;

  int order() const { return static_cast<int>(phi.size()); }

  // Deterministic (zero-noise) forecast of `steps` values continuing the
  // segment the model was fit on. `tail` holds the most recent values,
  // oldest first; needs at least order() entries.
  std::vector<double> forecast(std::span<const double> tail, int steps) const;
};

ArModel fit_ar(std::span<const double> segment, int order);

// Order selected by AIC over 1..max_order (capped to segment length / 4).
ArModel fit_ar_aic(std::span<const double> segment, int max_order);

}  // namespace wsynth
