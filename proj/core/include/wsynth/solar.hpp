#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wsynth {

// Solar elevation in degrees from the NOAA solar-position formulas
// (fractional-year declination plus equation of time); good to ~0.2 deg,
// which is plenty for day/night classification.
double solar_elevation_deg(std::int64_t epoch_hour, double latitude_deg,
                           double longitude_deg);

struct NightMask {
  std::vector<bool> flags;  // true = night
  double threshold_elevation_deg = 0.0;

  std::size_t size() const { return flags.size(); }
  bool operator[](std::size_t i) const { return flags[i]; }
};

NightMask night_mask(std::span<const std::int64_t> timestamps, double latitude_deg,
                     double longitude_deg, double threshold_elevation_deg = 0.0);

// Replace night steps with a fictitious continuation of the daylight signal:
// forward and backward AR extrapolations from the neighbouring daylight
// runs, blended linearly across the gap. Order per gap is AIC-selected up
// to max_order. Daylight values are never modified. Adjacent runs shorter
// than 24 steps fall back to linear interpolation (warning on stderr).
std::vector<double> ar_fill_night(std::span<const double> series, const NightMask& mask,
                                  int max_order = 24);

struct HourlyMeanProfile {
  std::vector<double> means;  // length 8760
  std::string location_id;
};

// means[tau] = average over year slices of a flat (year, hour) series.
HourlyMeanProfile hourly_mean_profile(std::span<const double> flat_series,
                                      int n_years, const std::string& location_id);

// Additive deviation from the hourly mean profile. Hours whose long-term
// mean is below `floor_eps` carry no usable signal and map to 0.
std::vector<double> deviation_normalize(std::span<const double> series,
                                        const HourlyMeanProfile& profile,
                                        double floor_eps = 1.0);

// Inverse transform: add the profile back, clamp at 0, and force exact
// zeros on the night steps of the target year's mask.
std::vector<double> deviation_denormalize(std::span<const double> series,
                                          const HourlyMeanProfile& profile,
                                          const NightMask& mask);

}  // namespace wsynth
