#pragma once

// Ground-truth synthetic weather systems for tests: known spectra, known
// marginals, known cross-series coefficient correlation.

#include <cstdint>
#include <string>

#include "wsynth/dispatch.hpp"
#include "wsynth/panel.hpp"

namespace synthetic {

struct GroundTruth {
  int years = 20;
  std::uint64_t seed = 20240901;
  double annual_amp = 10.0;    // time-domain amplitude of the annual sinusoid
  double daily_amp = 3.0;      // amplitude of the daily sinusoid
  double noise_sigma = 2.0;    // iid Gaussian noise in the time domain
  double coeff_corr = 0.8;     // Re/Im correlation of t1/t2 annual coefficients
  double annual_jitter = 1.0;  // sd of the random annual coefficient, in
                               // time-domain amplitude units
  int start_year = 1996;
};

// Panel with four series:
//   t1, t2  temperature-like, annual coefficients correlated per coeff_corr
//   w1      wind-speed-like (m/s scale, annual cycle plus AR noise)
//   s1      solar radiation (clear-sky envelope times smooth cloud factor,
//           exact zeros at night)
wsynth::WeatherPanel build_panel(const GroundTruth& spec);

// True annual-bin coefficient magnitude of t1/t2: tau_max * annual_amp / 2.
double true_annual_coeff_magnitude(const GroundTruth& spec);

// Expected mean |c_k| of the iid-noise floor: sigma * sqrt(pi * tau_max) / 2.
double true_noise_floor_magnitude(const GroundTruth& spec);

// Three-zone toy dispatch system wired to the panel's series ids.
wsynth::DispatchProblem build_toy_grid();

// Small random dispatch instances for fuzzing; always feasible by
// construction (VOLL slack absorbs any shortfall).
wsynth::DispatchProblem random_instance(std::uint64_t seed, int max_zones, int max_plants,
                                        int max_storages, int horizon_hours);

}  // namespace synthetic
