#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsynth/sampler.hpp"
#include "wsynth/spectral.hpp"

namespace wsynth {

struct FitOptions {
  int max_ar_order = 24;          // night-fill AR order cap
  double solar_floor_eps = 1.0;   // W/m^2; hourly means below this carry no signal
  int anchor_month = 1;           // year boundary (Jan 1 by default)
  int anchor_day = 1;
};

// Full calibration: trim to complete years, preprocess solar series
// (night fill, hourly mean profile, deviation), fit per-series ECDFs,
// gaussianize, and estimate the per-frequency model.
SpectralModel fit_model(const WeatherPanel& panel, const FitOptions& options = {});

// Intermediate artifacts of the fit, exposed for diagnostics.
struct FitArtifacts {
  YearTensor gaussianized;
  CoefficientTensor coefficients;
  SpectralModel model;
};
FitArtifacts fit_model_artifacts(const WeatherPanel& panel, const FitOptions& options = {});

// Generate `count` years from seeds derived from master_seed and write
// year_<seed>.csv files plus ensemble_manifest.json into out_dir.
std::vector<std::string> write_ensemble(const SpectralModel& model, std::uint64_t master_seed,
                                        int count, const std::string& out_dir);

}  // namespace wsynth
