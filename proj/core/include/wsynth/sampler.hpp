#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "wsynth/rng.hpp"
#include "wsynth/spectral.hpp"

namespace wsynth {

// One synthetic year in physical units.
struct GeneratedYear {
  Eigen::MatrixXd values;  // 8760 x p_max
  std::uint64_t seed = 0;
  std::string model_version;
  std::vector<std::int64_t> timestamps;  // reference-year instants
};

// Draws correlated Fourier coefficients from a fitted model. Factorizations
// of every Sigma_k are prepared once at construction; afterwards the sampler
// is immutable and safe to share across threads (each caller owns its Rng).
class CoefficientSampler {
 public:
  explicit CoefficientSampler(const SpectralModel& model);

  // One draw mu_k + L_k z for frequency bin k (0-based). Components with
  // zero model variance come out exactly at their means; the imaginary
  // parts of DC and Nyquist are forced to zero.
  Eigen::VectorXd sample(int k, Rng& rng) const;

  // Mean-only draw (the degenerate Sigma = 0 case for every component).
  const Eigen::VectorXd& mean(int k) const;

  int n_freq() const { return n_freq_; }
  Eigen::Index n_series() const { return p_max_; }

 private:
  int n_freq_ = 0;
  Eigen::Index p_max_ = 0;
  std::vector<Eigen::VectorXd> mu_;
  std::vector<Eigen::MatrixXd> factor_;       // L_k with L L^T = Sigma_k
  std::vector<std::vector<bool>> degenerate_;  // per-component zero variance
};

// Assemble the half spectrum of one series from per-frequency draws and
// invert to the time domain. draws[k] is the stacked (Re, Im) vector.
std::vector<double> inverse_dft(const std::vector<Eigen::VectorXd>& draws, Eigen::Index p,
                                Eigen::Index p_max);

// Full generation pipeline with precomputed sampler and night masks; the
// caller keeps `model` alive. Thread safe once constructed.
class YearGenerator {
 public:
  explicit YearGenerator(const SpectralModel& model);

  // Sample all frequencies, invert, de-gaussianize, restore solar
  // structure. Deterministic given the seed alone.
  GeneratedYear generate(std::uint64_t seed) const;

  const CoefficientSampler& sampler() const { return sampler_; }

 private:
  const SpectralModel* model_;
  CoefficientSampler sampler_;
  std::map<int, NightMask> masks_;
  std::vector<std::int64_t> timestamps_;
};

// One-shot convenience wrapper around YearGenerator.
GeneratedYear generate_year(const SpectralModel& model, std::uint64_t seed);

// Night masks of the model's reference year for every solar series.
std::map<int, NightMask> reference_night_masks(const SpectralModel& model);
std::vector<std::int64_t> reference_timestamps(const SpectralModel& model);

}  // namespace wsynth
