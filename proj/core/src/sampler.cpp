#include "wsynth/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "wsynth/calendar.hpp"
#include "wsynth/dft.hpp"

namespace wsynth {

CoefficientSampler::CoefficientSampler(const SpectralModel& model) {
  n_freq_ = model.n_freq();
  p_max_ = model.n_series();
  mu_ = model.mu;
  factor_.reserve(static_cast<std::size_t>(n_freq_));
  degenerate_.reserve(static_cast<std::size_t>(n_freq_));

  for (int k = 0; k < n_freq_; ++k) {
    const Eigen::MatrixXd& sigma = model.sigma[static_cast<std::size_t>(k)];
    const Eigen::Index dim = sigma.rows();

    const double scale = sigma.cwiseAbs().maxCoeff();
    std::vector<bool> degen(static_cast<std::size_t>(dim), false);
    for (Eigen::Index i = 0; i < dim; ++i) {
      degen[static_cast<std::size_t>(i)] = sigma(i, i) <= 0.0;
    }

    Eigen::MatrixXd L;
    if (scale <= 0.0) {
      L = Eigen::MatrixXd::Zero(dim, dim);
    } else {
      Eigen::LLT<Eigen::MatrixXd> llt(sigma);
      if (llt.info() == Eigen::Success) {
        L = llt.matrixL();
      } else {
        // Semidefinite or mildly indefinite from rounding: factor through
        // the eigendecomposition with clipped eigenvalues.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
        if (es.info() != Eigen::Success) {
          throw std::runtime_error("CoefficientSampler: covariance factorization failed");
        }
        const double floor = -1e-8 * std::max(scale, 1e-300);
        Eigen::VectorXd ev = es.eigenvalues();
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
          if (ev[i] < floor) {
            throw std::runtime_error(
                "CoefficientSampler: covariance not PSD within tolerance");
          }
          ev[i] = std::sqrt(std::max(ev[i], 0.0));
        }
        L = es.eigenvectors() * ev.asDiagonal();
      }
    }
    // Zero-variance components must reproduce their means exactly.
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (degen[static_cast<std::size_t>(i)]) L.row(i).setZero();
    }
    factor_.push_back(std::move(L));
    degenerate_.push_back(std::move(degen));
  }
}

const Eigen::VectorXd& CoefficientSampler::mean(int k) const {
  return mu_[static_cast<std::size_t>(k)];
}

Eigen::VectorXd CoefficientSampler::sample(int k, Rng& rng) const {
  const Eigen::VectorXd& mu = mu_[static_cast<std::size_t>(k)];
  const Eigen::MatrixXd& L = factor_[static_cast<std::size_t>(k)];
  const Eigen::Index dim = mu.size();
  Eigen::VectorXd z(dim);
  for (Eigen::Index i = 0; i < dim; ++i) z[i] = rng.next_normal();
  Eigen::VectorXd draw = mu + L * z;
  // Structural zeros (DC/Nyquist imaginary parts) and other degenerate
  // components sit exactly at the mean.
  const auto& degen = degenerate_[static_cast<std::size_t>(k)];
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (degen[static_cast<std::size_t>(i)]) draw[i] = mu[i];
  }
  return draw;
}

std::vector<double> inverse_dft(const std::vector<Eigen::VectorXd>& draws, Eigen::Index p,
                                Eigen::Index p_max) {
  const int n_freq = static_cast<int>(draws.size());
  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(n_freq));
  for (int k = 0; k < n_freq; ++k) {
    const Eigen::VectorXd& d = draws[static_cast<std::size_t>(k)];
    spectrum[static_cast<std::size_t>(k)] = std::complex<double>(d[p], d[p_max + p]);
  }
  return inverse_dft_year(spectrum);
}

std::vector<std::int64_t> reference_timestamps(const SpectralModel& model) {
  std::vector<std::int64_t> ts(kHoursPerYear);
  const std::int64_t start = epoch_hours(CivilTime{model.reference_year, 1, 1, 0});
  for (int t = 0; t < kHoursPerYear; ++t) ts[static_cast<std::size_t>(t)] = start + t;
  return ts;
}

std::map<int, NightMask> reference_night_masks(const SpectralModel& model) {
  std::map<int, NightMask> masks;
  const auto ts = reference_timestamps(model);
  for (Eigen::Index p = 0; p < model.n_series(); ++p) {
    if (!model.is_solar(p)) continue;
    const SeriesMeta& m = model.series[static_cast<std::size_t>(p)];
    masks.emplace(static_cast<int>(p), night_mask(ts, m.latitude, m.longitude));
  }
  return masks;
}

YearGenerator::YearGenerator(const SpectralModel& model)
    : model_(&model),
      sampler_(model),
      masks_(reference_night_masks(model)),
      timestamps_(reference_timestamps(model)) {
  for (Eigen::Index p = 0; p < model.n_series(); ++p) {
    if (model.is_solar(p) && model.solar_profiles.find(static_cast<int>(p)) ==
                                 model.solar_profiles.end()) {
      throw std::runtime_error("YearGenerator: solar series lacks a mean profile: " +
                               model.series[static_cast<std::size_t>(p)].id);
    }
  }
}

GeneratedYear YearGenerator::generate(std::uint64_t seed) const {
  const SpectralModel& model = *model_;
  const Eigen::Index p_max = model.n_series();
  const int n_freq = model.n_freq();

  Rng rng(seed);
  std::vector<Eigen::VectorXd> draws;
  draws.reserve(static_cast<std::size_t>(n_freq));
  for (int k = 0; k < n_freq; ++k) draws.push_back(sampler_.sample(k, rng));

  GeneratedYear year;
  year.seed = seed;
  year.model_version = model.model_version;
  year.timestamps = timestamps_;
  year.values.resize(kHoursPerYear, p_max);

  for (Eigen::Index p = 0; p < p_max; ++p) {
    std::vector<double> z = inverse_dft(draws, p, p_max);
    std::vector<double> x = model.cdfs[static_cast<std::size_t>(p)].degaussianize(z);
    if (model.is_solar(p)) {
      const auto& profile = model.solar_profiles.at(static_cast<int>(p));
      x = deviation_denormalize(x, profile, masks_.at(static_cast<int>(p)));
    }
    for (int t = 0; t < kHoursPerYear; ++t) year.values(t, p) = x[static_cast<std::size_t>(t)];
  }
  return year;
}

GeneratedYear generate_year(const SpectralModel& model, std::uint64_t seed) {
  const YearGenerator gen(model);
  return gen.generate(seed);
}

}  // namespace wsynth
