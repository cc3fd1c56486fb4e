#include "wsynth/ar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wsynth {

namespace {

// Biased autocovariance at lags 0..max_lag.
std::vector<double> autocovariance(std::span<const double> x, int max_lag, double m) {
  const std::size_t n = x.size();
  std::vector<double> acov(static_cast<std::size_t>(max_lag) + 1, 0.0);
  for (int lag = 0; lag <= max_lag; ++lag) {
    double s = 0.0;
    for (std::size_t t = 0; t + static_cast<std::size_t>(lag) < n; ++t) {
      s += (x[t] - m) * (x[t + static_cast<std::size_t>(lag)] - m);
    }
    acov[static_cast<std::size_t>(lag)] = s / static_cast<double>(n);
  }
  return acov;
}

}  // namespace

ArModel fit_ar(std::span<const double> segment, int order) {
  const std::size_t n = segment.size();
  if (order < 1) throw std::invalid_argument("fit_ar: order must be >= 1");
  if (n < static_cast<std::size_t>(order) + 2) {
    throw std::invalid_argument("fit_ar: segment too short for requested order");
  }
  double m = 0.0;
  for (double v : segment) m += v;
  m /= static_cast<double>(n);

  const auto r = autocovariance(segment, order, m);
  ArModel model;
  model.mean = m;
  if (r[0] <= 0.0) {
    // Constant segment: AR degenerates to the mean.
    model.phi.assign(static_cast<std::size_t>(order), 0.0);
    model.noise_variance = 0.0;
    return model;
  }

  // Levinson-Durbin recursion; biased autocovariance keeps the fit stable.
  std::vector<double> phi(static_cast<std::size_t>(order), 0.0);
  std::vector<double> prev(static_cast<std::size_t>(order), 0.0);
  double err = r[0];
  for (int k = 1; k <= order; ++k) {
    double acc = r[static_cast<std::size_t>(k)];
    for (int i = 1; i < k; ++i) {
      acc -= phi[static_cast<std::size_t>(i - 1)] * r[static_cast<std::size_t>(k - i)];
    }
    const double reflect = acc / err;
    prev = phi;
    phi[static_cast<std::size_t>(k - 1)] = reflect;
    for (int i = 1; i < k; ++i) {
      phi[static_cast<std::size_t>(i - 1)] =
          prev[static_cast<std::size_t>(i - 1)] - reflect * prev[static_cast<std::size_t>(k - i - 1)];
    }
    err *= (1.0 - reflect * reflect);
    if (err <= 0.0) {
      err = 0.0;
      break;
    }
  }
  model.phi = std::move(phi);
  model.noise_variance = err;
  return model;
}

ArModel fit_ar_aic(std::span<const double> segment, int max_order) {
  const int n = static_cast<int>(segment.size());
  const int cap = std::max(1, std::min(max_order, n / 4));
  ArModel best;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= cap; ++p) {
    ArModel m = fit_ar(segment, p);
    const double var = std::max(m.noise_variance, 1e-300);
    const double aic = static_cast<double>(n) * std::log(var) + 2.0 * (p + 1);
    if (aic < best_aic) {
      best_aic = aic;
      best = std::move(m);
    }
  }
  return best;
}

std::vector<double> ArModel::forecast(std::span<const double> tail, int steps) const {
  const int p = order();
  if (static_cast<int>(tail.size()) < p) {
    throw std::invalid_argument("ArModel::forecast: tail shorter than model order");
  }
  std::vector<double> hist(tail.end() - p, tail.end());
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int s = 0; s < steps; ++s) {
    double v = 0.0;
    for (int i = 0; i < p; ++i) {
      v += phi[static_cast<std::size_t>(i)] * (hist[static_cast<std::size_t>(p - 1 - i)] - mean);
    }
    v += mean;
    out.push_back(v);
    hist.erase(hist.begin());
    hist.push_back(v);
  }
  return out;
}

}  // namespace wsynth
