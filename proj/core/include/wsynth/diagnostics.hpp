#pragma once

#include <span>
#include <string>
#include <vector>

#include "wsynth/pipeline.hpp"

namespace wsynth {

struct DiagnosticsOptions {
  int time_acf_max_lag = 168;
  int freq_acf_max_lag = 50;
  int freq_window = 100;        // window length for the per-offset lag-1 ACF
  int freq_window_stride = 100;
  // Frequency band counted as noise: periods of one day and shorter.
  int noise_band_min_bin = 365;
  double normality_alpha = 0.05;
};

// Windowed lag-1 autocorrelation of a sequence: one value per window offset
// together with the 95% white-noise band 1.96/sqrt(window).
struct WindowedAcf {
  std::vector<int> offsets;
  std::vector<double> lag1;
  double bound = 0.0;
};
WindowedAcf windowed_lag1_acf(std::span<const double> sequence, int window, int stride);

// Emit the tables behind the model's diagnostic figures into out_dir:
//   acf_time.csv         lag, per-series ACF of the gaussianized series
//   acf_frequency.csv    lag, per-series ACF of coefficient magnitudes over k
//   acf_frequency_windowed.csv offset, per-series windowed lag-1 ACF, bound
//   spectrum.csv         k, period_hours, per-series magnitude mean / phase /
//                        normality p-values, per-pair Re-Re correlation
//   noise_intensity.csv  id, lat, lon, parameter, mean high-frequency magnitude
//   normality_summary.json  rejection fraction and worst offenders
void write_diagnostics(const FitArtifacts& artifacts, const std::string& out_dir,
                       const DiagnosticsOptions& options = {});

}  // namespace wsynth
