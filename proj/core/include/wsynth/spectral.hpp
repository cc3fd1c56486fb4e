#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wsynth/calendar.hpp"
#include "wsynth/ecdf.hpp"
#include "wsynth/panel.hpp"
#include "wsynth/solar.hpp"

namespace wsynth {

// Complex Fourier coefficients of every (series, year) pair.
// coeff[k](p, i): frequency bin k (0-based, k=0 is DC, k=n_freq-1 is the
// Nyquist bin), series p, year i.
struct CoefficientTensor {
  std::vector<Eigen::MatrixXcd> coeff;  // n_freq matrices of p_max x i_max
  int tau_max = kHoursPerYear;

  int n_freq() const { return static_cast<int>(coeff.size()); }
  Eigen::Index n_series() const { return coeff.empty() ? 0 : coeff.front().rows(); }
  Eigen::Index n_years() const { return coeff.empty() ? 0 : coeff.front().cols(); }
};

CoefficientTensor dft_tensor(const YearTensor& tensor);

// Per-frequency multivariate normal over stacked (Re, Im) coefficient parts,
// plus everything needed to map samples back to physical units.
struct SpectralModel {
  int tau_max = kHoursPerYear;
  std::vector<SeriesMeta> series;
  std::vector<Eigen::VectorXd> mu;     // n_freq vectors of length 2p
  std::vector<Eigen::MatrixXd> sigma;  // n_freq matrices of 2p x 2p
  std::vector<EmpiricalCdf> cdfs;      // one per series, in series order
  std::map<int, HourlyMeanProfile> solar_profiles;  // keyed by series index
  std::vector<int> years_used;
  int reference_year = 2015;  // non-leap year anchoring generated timestamps
  std::string model_version = "wsynth-1";

  int n_freq() const { return tau_max / 2 + 1; }
  Eigen::Index n_series() const { return static_cast<Eigen::Index>(series.size()); }
  bool is_solar(Eigen::Index p) const {
    return series[static_cast<std::size_t>(p)].parameter == Parameter::kSolarRadiation;
  }
};

// Estimate mu_k and Sigma_k for every frequency from gaussianized year
// slices. Sigma entries use the pairwise-difference estimator; each matrix
// is symmetrized and eigenvalue-clipped to be positive semidefinite. The
// imaginary parts of the DC and Nyquist bins are structural zeros for real
// input; their mean and covariance entries are forced to exactly 0.
SpectralModel fit_spectral_model(const YearTensor& gaussianized, std::vector<EmpiricalCdf> cdfs,
                                 std::map<int, HourlyMeanProfile> solar_profiles,
                                 int reference_year);

struct NormalityOffender {
  int k = 0;             // frequency bin (0-based)
  int series = 0;
  bool imaginary_part = false;
  double p_value = 1.0;
};

struct NormalityReport {
  double alpha = 0.05;
  std::size_t tested = 0;
  std::size_t rejected = 0;
  bool low_power = false;  // few years => weak test
  std::vector<NormalityOffender> worst;  // ascending p-value

  double rejection_fraction() const {
    return tested == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(tested);
  }
};

// Anderson-Darling normality check of each coefficient's Re/Im samples
// across years. Diagnostic only; fitting proceeds regardless of outcome.
NormalityReport normality_diagnostic(const CoefficientTensor& tensor, double alpha = 0.05,
                                     std::size_t n_worst = 20);

}  // namespace wsynth
