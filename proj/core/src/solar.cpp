#include "wsynth/solar.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "wsynth/ar.hpp"
#include "wsynth/calendar.hpp"

namespace wsynth {

namespace {
constexpr double kDegToRad = M_PI / 180.0;
constexpr double kRadToDeg = 180.0 / M_PI;
}  // namespace

double solar_elevation_deg(std::int64_t epoch_hour, double latitude_deg,
                           double longitude_deg) {
  const CivilTime t = civil_from_epoch_hours(epoch_hour);
  const double days_in_year = is_leap_year(t.year) ? 366.0 : 365.0;
  // Fractional year, radians (NOAA convention, centred on local noon).
  const double gamma = 2.0 * M_PI / days_in_year *
                       (fractional_day_of_year(t) + (t.hour - 12.0) / 24.0);

  const double decl = 0.006918 - 0.399912 * std::cos(gamma) + 0.070257 * std::sin(gamma) -
                      0.006758 * std::cos(2 * gamma) + 0.000907 * std::sin(2 * gamma) -
                      0.002697 * std::cos(3 * gamma) + 0.00148 * std::sin(3 * gamma);
  const double eqtime_min = 229.18 * (0.000075 + 0.001868 * std::cos(gamma) -
                                      0.032077 * std::sin(gamma) -
                                      0.014615 * std::cos(2 * gamma) -
                                      0.040849 * std::sin(2 * gamma));

  // True solar time in minutes; input hours are UTC.
  const double tst = t.hour * 60.0 + eqtime_min + 4.0 * longitude_deg;
  const double hour_angle_deg = tst / 4.0 - 180.0;

  const double lat = latitude_deg * kDegToRad;
  const double ha = hour_angle_deg * kDegToRad;
  const double sin_elev = std::sin(lat) * std::sin(decl) +
                          std::cos(lat) * std::cos(decl) * std::cos(ha);
  return std::asin(std::clamp(sin_elev, -1.0, 1.0)) * kRadToDeg;
}

NightMask night_mask(std::span<const std::int64_t> timestamps, double latitude_deg,
                     double longitude_deg, double threshold_elevation_deg) {
  NightMask mask;
  mask.threshold_elevation_deg = threshold_elevation_deg;
  mask.flags.resize(timestamps.size());
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    mask.flags[i] = solar_elevation_deg(timestamps[i], latitude_deg, longitude_deg) <=
                    threshold_elevation_deg;
  }
  return mask;
}

namespace {

struct Gap {
  std::size_t begin;  // first night index
  std::size_t end;    // one past last night index
};

constexpr std::size_t kMinFitLength = 24;
// Fitting window: a week of daylight context is enough for the short gaps
// the night fill deals with.
constexpr std::size_t kMaxFitWindow = 24 * 7;

}  // namespace

std::vector<double> ar_fill_night(std::span<const double> series, const NightMask& mask,
                                  int max_order) {
  if (series.size() != mask.size()) {
    throw std::invalid_argument("ar_fill_night: series/mask length mismatch");
  }
  std::vector<double> out(series.begin(), series.end());
  const std::size_t n = out.size();

  std::vector<Gap> gaps;
  for (std::size_t i = 0; i < n;) {
    if (mask[i]) {
      std::size_t j = i;
      while (j < n && mask[j]) ++j;
      gaps.push_back({i, j});
      i = j;
    } else {
      ++i;
    }
  }

  bool warned = false;
  for (const Gap& gap : gaps) {
    const std::size_t len = gap.end - gap.begin;

    // Daylight run directly before the gap.
    std::size_t pre_end = gap.begin;
    std::size_t pre_begin = pre_end;
    while (pre_begin > 0 && !mask[pre_begin - 1] && pre_end - pre_begin < kMaxFitWindow) {
      --pre_begin;
    }
    // Daylight run directly after.
    std::size_t post_begin = gap.end;
    std::size_t post_end = post_begin;
    while (post_end < n && !mask[post_end] && post_end - post_begin < kMaxFitWindow) {
      ++post_end;
    }
    const std::size_t pre_len = pre_end - pre_begin;
    const std::size_t post_len = post_end - post_begin;

    std::vector<double> fwd, bwd;
    if (pre_len >= kMinFitLength) {
      std::span<const double> seg(out.data() + pre_begin, pre_len);
      const ArModel m = fit_ar_aic(seg, max_order);
      fwd = m.forecast(seg, static_cast<int>(len));
    }
    if (post_len >= kMinFitLength) {
      // Fit on the reversed following run so the "forecast" walks backwards
      // into the gap.
      std::vector<double> rev(out.begin() + static_cast<std::ptrdiff_t>(post_begin),
                              out.begin() + static_cast<std::ptrdiff_t>(post_end));
      std::reverse(rev.begin(), rev.end());
      const ArModel m = fit_ar_aic(rev, max_order);
      bwd = m.forecast(rev, static_cast<int>(len));
      std::reverse(bwd.begin(), bwd.end());
    }

    if (fwd.empty() && bwd.empty()) {
      // Linear interpolation fallback between the bracketing daylight values.
      if (!warned) {
        std::cerr << "warning: daylight segment shorter than " << kMinFitLength
                  << " steps, falling back to linear night fill\n";
        warned = true;
      }
      const double left = gap.begin > 0 ? out[gap.begin - 1]
                          : (gap.end < n ? out[gap.end] : 0.0);
      const double right = gap.end < n ? out[gap.end] : left;
      for (std::size_t i = 0; i < len; ++i) {
        const double w = static_cast<double>(i + 1) / static_cast<double>(len + 1);
        out[gap.begin + i] = (1.0 - w) * left + w * right;
      }
      continue;
    }

    for (std::size_t i = 0; i < len; ++i) {
      // Weight grows linearly towards the following run.
      const double w = static_cast<double>(i + 1) / static_cast<double>(len + 1);
      double v;
      if (fwd.empty()) {
        v = bwd[i];
      } else if (bwd.empty()) {
        v = fwd[i];
      } else {
        v = (1.0 - w) * fwd[i] + w * bwd[i];
      }
      out[gap.begin + i] = v;
    }
  }
  return out;
}

HourlyMeanProfile hourly_mean_profile(std::span<const double> flat_series,
                                      int n_years, const std::string& location_id) {
  if (n_years < 2) throw std::invalid_argument("hourly_mean_profile: need >= 2 years");
  if (flat_series.size() != static_cast<std::size_t>(n_years) * kHoursPerYear) {
    throw std::invalid_argument("hourly_mean_profile: length != n_years * 8760");
  }
  HourlyMeanProfile profile;
  profile.location_id = location_id;
  profile.means.assign(kHoursPerYear, 0.0);
  for (int y = 0; y < n_years; ++y) {
    const std::size_t base = static_cast<std::size_t>(y) * kHoursPerYear;
    for (std::size_t tau = 0; tau < kHoursPerYear; ++tau) {
      profile.means[tau] += flat_series[base + tau];
    }
  }
  for (auto& m : profile.means) m /= static_cast<double>(n_years);
  return profile;
}

std::vector<double> deviation_normalize(std::span<const double> series,
                                        const HourlyMeanProfile& profile,
                                        double floor_eps) {
  if (series.size() % kHoursPerYear != 0) {
    throw std::invalid_argument("deviation_normalize: length not a multiple of 8760");
  }
  std::vector<double> out(series.size());
  for (std::size_t t = 0; t < series.size(); ++t) {
    const double m = profile.means[t % kHoursPerYear];
    out[t] = m >= floor_eps ? series[t] - m : 0.0;
  }
  return out;
}

std::vector<double> deviation_denormalize(std::span<const double> series,
                                          const HourlyMeanProfile& profile,
                                          const NightMask& mask) {
  if (series.size() % kHoursPerYear != 0) {
    throw std::invalid_argument("deviation_denormalize: length not a multiple of 8760");
  }
  if (mask.size() != series.size()) {
    throw std::invalid_argument("deviation_denormalize: mask length mismatch");
  }
  std::vector<double> out(series.size());
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (mask[t]) {
      out[t] = 0.0;
    } else {
      out[t] = std::max(0.0, series[t] + profile.means[t % kHoursPerYear]);
    }
  }
  return out;
}

}  // namespace wsynth
