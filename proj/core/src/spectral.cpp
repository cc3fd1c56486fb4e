#include "wsynth/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "wsynth/dft.hpp"
#include "wsynth/stats.hpp"

namespace wsynth {

CoefficientTensor dft_tensor(const YearTensor& tensor) {
  CoefficientTensor out;
  out.tau_max = kHoursPerYear;
  const int n_freq = kHoursPerYear / 2 + 1;
  const Eigen::Index p_max = tensor.n_series();
  const Eigen::Index i_max = tensor.n_years();
  out.coeff.assign(static_cast<std::size_t>(n_freq), Eigen::MatrixXcd(p_max, i_max));

  RealDft dft(kHoursPerYear);
  std::vector<double> buf(kHoursPerYear);
  for (Eigen::Index i = 0; i < i_max; ++i) {
    const Eigen::MatrixXd& year = tensor.years[static_cast<std::size_t>(i)];
    for (Eigen::Index p = 0; p < p_max; ++p) {
      for (int t = 0; t < kHoursPerYear; ++t) buf[static_cast<std::size_t>(t)] = year(t, p);
      const auto spec = dft.forward(buf);
      for (int k = 0; k < n_freq; ++k) {
        out.coeff[static_cast<std::size_t>(k)](p, i) = spec[static_cast<std::size_t>(k)];
      }
    }
  }
  return out;
}

namespace {

// Clip negative eigenvalues to zero; finite-sample covariance built from a
// handful of years is routinely indefinite after symmetrization.
Eigen::MatrixXd make_psd(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("fit_spectral_model: eigendecomposition failed");
  }
  Eigen::VectorXd ev = es.eigenvalues();
  bool any_negative = false;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < 0.0) {
      ev[i] = 0.0;
      any_negative = true;
    }
  }
  if (!any_negative) return sym;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

SpectralModel fit_spectral_model(const YearTensor& gaussianized, std::vector<EmpiricalCdf> cdfs,
                                 std::map<int, HourlyMeanProfile> solar_profiles,
                                 int reference_year) {
  const Eigen::Index p_max = gaussianized.n_series();
  const Eigen::Index i_max = gaussianized.n_years();
  if (i_max < 2) throw std::invalid_argument("fit_spectral_model: need >= 2 years");
  if (static_cast<Eigen::Index>(cdfs.size()) != p_max) {
    throw std::invalid_argument("fit_spectral_model: one cdf per series required");
  }

  const CoefficientTensor ct = dft_tensor(gaussianized);
  const int n_freq = ct.n_freq();
  const int nyquist = n_freq - 1;

  SpectralModel model;
  model.tau_max = kHoursPerYear;
  model.series = gaussianized.meta;
  model.cdfs = std::move(cdfs);
  model.solar_profiles = std::move(solar_profiles);
  model.years_used = gaussianized.year_labels;
  model.reference_year = reference_year;
  model.mu.assign(static_cast<std::size_t>(n_freq), Eigen::VectorXd::Zero(2 * p_max));
  model.sigma.assign(static_cast<std::size_t>(n_freq), Eigen::MatrixXd::Zero(2 * p_max, 2 * p_max));

  // The imaginary part of DC and Nyquist must vanish for real input.
  double worst_resid = 0.0;
  for (Eigen::Index p = 0; p < p_max; ++p) {
    for (Eigen::Index i = 0; i < i_max; ++i) {
      worst_resid = std::max(worst_resid, std::fabs(ct.coeff[0](p, i).imag()));
      worst_resid = std::max(
          worst_resid, std::fabs(ct.coeff[static_cast<std::size_t>(nyquist)](p, i).imag()));
    }
  }
  if (worst_resid > 1e-6 * kHoursPerYear) {
    throw std::runtime_error("fit_spectral_model: nonzero imaginary part at DC/Nyquist");
  }

  std::vector<double> a(static_cast<std::size_t>(i_max));
  std::vector<double> b(static_cast<std::size_t>(i_max));
  Eigen::MatrixXd parts(2 * p_max, i_max);
  for (int k = 0; k < n_freq; ++k) {
    const Eigen::MatrixXcd& c = ct.coeff[static_cast<std::size_t>(k)];
    const bool boundary = (k == 0 || k == nyquist);

    // Stacked Re/Im samples per year: rows 0..p-1 real parts, p..2p-1
    // imaginary parts (mean vector ordering follows the same layout).
    for (Eigen::Index p = 0; p < p_max; ++p) {
      for (Eigen::Index i = 0; i < i_max; ++i) {
        parts(p, i) = c(p, i).real();
        parts(p_max + p, i) = boundary ? 0.0 : c(p, i).imag();
      }
    }

    Eigen::VectorXd& mu = model.mu[static_cast<std::size_t>(k)];
    for (Eigen::Index r = 0; r < 2 * p_max; ++r) {
      mu[r] = parts.row(r).mean();
    }

    Eigen::MatrixXd& sigma = model.sigma[static_cast<std::size_t>(k)];
    for (Eigen::Index r = 0; r < 2 * p_max; ++r) {
      for (Eigen::Index i = 0; i < i_max; ++i) a[static_cast<std::size_t>(i)] = parts(r, i);
      for (Eigen::Index s = r; s < 2 * p_max; ++s) {
        for (Eigen::Index i = 0; i < i_max; ++i) b[static_cast<std::size_t>(i)] = parts(s, i);
        const double cov = pairwise_covariance(a, b);
        sigma(r, s) = cov;
        sigma(s, r) = cov;
      }
    }
    sigma = make_psd(0.5 * (sigma + sigma.transpose()));

    if (boundary) {
      // Structural zeros: no variance in the imaginary half.
      for (Eigen::Index p = 0; p < p_max; ++p) {
        mu[p_max + p] = 0.0;
        sigma.row(p_max + p).setZero();
        sigma.col(p_max + p).setZero();
      }
    }
  }
  return model;
}

NormalityReport normality_diagnostic(const CoefficientTensor& tensor, double alpha,
                                     std::size_t n_worst) {
  NormalityReport report;
  report.alpha = alpha;
  const Eigen::Index i_max = tensor.n_years();
  const Eigen::Index p_max = tensor.n_series();
  const int n_freq = tensor.n_freq();
  report.low_power = i_max < 20;
  if (i_max < 8) {
    std::cerr << "warning: normality diagnostic has very low power with " << i_max
              << " years\n";
  }

  std::vector<double> sample(static_cast<std::size_t>(i_max));
  std::vector<NormalityOffender> offenders;
  for (int k = 0; k < n_freq; ++k) {
    const Eigen::MatrixXcd& c = tensor.coeff[static_cast<std::size_t>(k)];
    const bool boundary = (k == 0 || k == n_freq - 1);
    for (Eigen::Index p = 0; p < p_max; ++p) {
      for (int part = 0; part < (boundary ? 1 : 2); ++part) {
        for (Eigen::Index i = 0; i < i_max; ++i) {
          sample[static_cast<std::size_t>(i)] =
              part == 0 ? c(p, i).real() : c(p, i).imag();
        }
        const NormalityTest t = anderson_darling_normality(sample);
        ++report.tested;
        if (t.p_value < alpha) {
          ++report.rejected;
          offenders.push_back({k, static_cast<int>(p), part == 1, t.p_value});
        }
      }
    }
  }

  std::sort(offenders.begin(), offenders.end(),
            [](const NormalityOffender& x, const NormalityOffender& y) {
              return x.p_value < y.p_value;
            });
  if (offenders.size() > n_worst) offenders.resize(n_worst);
  report.worst = std::move(offenders);
  return report;
}

}  // namespace wsynth
