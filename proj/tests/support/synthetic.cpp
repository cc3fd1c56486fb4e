#include "support/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "wsynth/calendar.hpp"
#include "wsynth/dft.hpp"
#include "wsynth/rng.hpp"
#include "wsynth/solar.hpp"

namespace synthetic {

using wsynth::CivilTime;
using wsynth::kHoursPerYear;
using wsynth::Rng;

namespace {

constexpr int kN = kHoursPerYear;

std::complex<double> complex_normal(Rng& rng) {
  return {rng.next_normal(), rng.next_normal()};
}

// Time series with spectrum {annual bin: c_annual} plus daily sinusoid and
// iid noise added in the time domain.
std::vector<double> build_temperature_year(std::complex<double> c_annual, double daily_amp,
                                           double daily_phase, double noise_sigma, Rng& rng) {
  std::vector<std::complex<double>> half(static_cast<std::size_t>(kN / 2 + 1),
                                         std::complex<double>(0.0, 0.0));
  half[1] = c_annual;
  std::vector<double> x = wsynth::inverse_dft_year(half);
  for (int t = 0; t < kN; ++t) {
    const double daily = daily_amp *
        std::sin(2.0 * M_PI * 365.0 * static_cast<double>(t) / kN + daily_phase);
    x[static_cast<std::size_t>(t)] += daily + noise_sigma * rng.next_normal();
  }
  return x;
}

}  // namespace

double true_annual_coeff_magnitude(const GroundTruth& spec) {
  return static_cast<double>(kN) * spec.annual_amp / 2.0;
}

double true_noise_floor_magnitude(const GroundTruth& spec) {
  return spec.noise_sigma * std::sqrt(M_PI * static_cast<double>(kN)) / 2.0;
}

wsynth::WeatherPanel build_panel(const GroundTruth& spec) {
  wsynth::WeatherPanel panel;
  panel.meta = {
      {"t1", wsynth::Parameter::kTemperature, 53.6, 10.0, "degC"},
      {"t2", wsynth::Parameter::kTemperature, 51.2, 6.8, "degC"},
      {"w1", wsynth::Parameter::kWindSpeed, 54.2, 8.8, "m/s"},
      {"s1", wsynth::Parameter::kSolarRadiation, 48.1, 11.6, "W/m2"},
  };

  // Only non-leap years keep the construction aligned with the fixed
  // 8760-hour grid the spectra are defined on.
  std::vector<int> years;
  for (int y = spec.start_year; static_cast<int>(years.size()) < spec.years; ++y) {
    if (!wsynth::is_leap_year(y)) years.push_back(y);
  }

  const std::size_t rows = static_cast<std::size_t>(spec.years) * kN;
  panel.timestamps.reserve(rows);
  panel.values.resize(static_cast<Eigen::Index>(rows), 4);

  Rng rng(spec.seed);
  // Mean annual coefficient of a pure A*sin(2*pi*t/N): -i * N/2 * A.
  const std::complex<double> c0(0.0, -0.5 * kN * spec.annual_amp);
  const double s = 0.5 * kN * spec.annual_jitter;
  const double rho = spec.coeff_corr;

  for (int yi = 0; yi < spec.years; ++yi) {
    const int year = years[static_cast<std::size_t>(yi)];
    const std::int64_t start = wsynth::epoch_hours(CivilTime{year, 1, 1, 0});
    for (int t = 0; t < kN; ++t) panel.timestamps.push_back(start + t);

    // Correlated annual coefficients via a shared factor.
    const std::complex<double> shared = complex_normal(rng);
    const std::complex<double> own1 = complex_normal(rng);
    const std::complex<double> own2 = complex_normal(rng);
    const std::complex<double> c1 = c0 + s * (std::sqrt(rho) * shared + std::sqrt(1.0 - rho) * own1);
    const std::complex<double> c2 = c0 + s * (std::sqrt(rho) * shared + std::sqrt(1.0 - rho) * own2);

    const auto t1 = build_temperature_year(c1, spec.daily_amp, 0.9, spec.noise_sigma, rng);
    const auto t2 = build_temperature_year(c2, spec.daily_amp, 1.1, spec.noise_sigma, rng);

    // Wind speed: annual cycle around 8 m/s with slow AR(1) gusts.
    std::vector<double> w1(kN);
    double gust = 0.0;
    for (int t = 0; t < kN; ++t) {
      gust = 0.97 * gust + 0.6 * rng.next_normal();
      const double annual = 2.5 * std::sin(2.0 * M_PI * (t + 2100.0) / kN);
      w1[static_cast<std::size_t>(t)] = std::max(0.0, 8.0 + annual + gust);
    }

    // Solar: clear-sky envelope scaled by a smooth cloud factor.
    std::vector<double> s1(kN);
    double cloud = 0.0;
    const double lat = panel.meta[3].latitude;
    const double lon = panel.meta[3].longitude;
    for (int t = 0; t < kN; ++t) {
      cloud = 0.92 * cloud + 0.25 * rng.next_normal();
      const double elev = wsynth::solar_elevation_deg(start + t, lat, lon);
      const double env = elev > 0.0 ? 900.0 * std::sin(elev * M_PI / 180.0) : 0.0;
      const double factor = std::clamp(0.75 + cloud, 0.05, 1.1);
      s1[static_cast<std::size_t>(t)] = env * factor;
    }

    const Eigen::Index r0 = static_cast<Eigen::Index>(yi) * kN;
    for (int t = 0; t < kN; ++t) {
      panel.values(r0 + t, 0) = t1[static_cast<std::size_t>(t)];
      panel.values(r0 + t, 1) = t2[static_cast<std::size_t>(t)];
      panel.values(r0 + t, 2) = w1[static_cast<std::size_t>(t)];
      panel.values(r0 + t, 3) = s1[static_cast<std::size_t>(t)];
    }
  }
  return panel;
}

wsynth::DispatchProblem build_toy_grid() {
  wsynth::DispatchProblem p;
  p.voll = 3000.0;
  p.block_hours = 24;
  p.wind_curve = {3.0, 12.0, 25.0};
  p.solar_performance_ratio = 0.9;

  wsynth::Zone z1;
  z1.id = "Z1";
  z1.base_load = 600.0;
  z1.heating = {14.0, 8.0};
  z1.temperature_series = "t1";
  wsynth::Zone z2;
  z2.id = "Z2";
  z2.base_load = 500.0;
  z2.heating = {14.0, 6.0};
  z2.temperature_series = "t2";
  wsynth::Zone z3;
  z3.id = "Z3";
  z3.base_load = 400.0;
  p.zones = {z1, z2, z3};

  p.plants = {
      {"nuc1", "Z1", "nuclear", 350.0, 8.0},
      {"lig1", "Z1", "lignite", 300.0, 25.0},
      {"gas1", "Z1", "gas", 220.0, 62.0},
      {"coal1", "Z2", "coal", 280.0, 35.0},
      {"gas2", "Z2", "gas", 200.0, 58.0},
      {"oil1", "Z2", "oil", 150.0, 66.0},
      {"coal2", "Z3", "coal", 220.0, 38.0},
      {"gas3", "Z3", "gas", 160.0, 60.0},
  };
  p.storages = {{"ps1", "Z1", 120.0, 120.0, 960.0, 0.81, 480.0}};
  p.interconnectors = {
      {"Z1", "Z2", 150.0}, {"Z2", "Z1", 150.0}, {"Z2", "Z3", 120.0},
      {"Z3", "Z2", 120.0}, {"Z1", "Z3", 100.0}, {"Z3", "Z1", 100.0},
  };
  p.capacity_map = {
      {"Z2", "wind", "w1", 450.0},
      {"Z3", "solar", "s1", 400.0},
  };
  return p;
}

wsynth::DispatchProblem random_instance(std::uint64_t seed, int max_zones, int max_plants,
                                        int max_storages, int horizon_hours) {
  Rng rng(seed);
  wsynth::DispatchProblem p;
  p.voll = 3000.0;
  p.block_hours = 0;  // single LP

  const int nz = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_zones)));
  for (int z = 0; z < nz; ++z) {
    wsynth::Zone zone;
    zone.id = "Z" + std::to_string(z + 1);
    zone.demand.resize(static_cast<std::size_t>(horizon_hours));
    zone.res_availability.resize(static_cast<std::size_t>(horizon_hours));
    for (int t = 0; t < horizon_hours; ++t) {
      zone.demand[static_cast<std::size_t>(t)] = 50.0 + 250.0 * rng.next_uniform();
      zone.res_availability[static_cast<std::size_t>(t)] = 120.0 * rng.next_uniform();
    }
    p.zones.push_back(std::move(zone));
  }

  const int nk = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_plants)));
  for (int k = 0; k < nk; ++k) {
    wsynth::Plant plant;
    plant.id = "P" + std::to_string(k + 1);
    plant.zone = "Z" + std::to_string(1 + rng.next_below(static_cast<std::uint64_t>(nz)));
    plant.fuel = "f" + std::to_string(k % 3);
    plant.capacity = 40.0 + 200.0 * rng.next_uniform();
    plant.marginal_cost = 5.0 + 95.0 * rng.next_uniform();
    p.plants.push_back(std::move(plant));
  }

  const int ns = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_storages) + 1));
  for (int s = 0; s < ns; ++s) {
    wsynth::Storage st;
    st.id = "S" + std::to_string(s + 1);
    st.zone = "Z" + std::to_string(1 + rng.next_below(static_cast<std::uint64_t>(nz)));
    st.max_charge = 20.0 + 60.0 * rng.next_uniform();
    st.max_discharge = 20.0 + 60.0 * rng.next_uniform();
    st.energy_capacity = 100.0 + 300.0 * rng.next_uniform();
    st.efficiency = 0.7 + 0.3 * rng.next_uniform();
    st.initial_energy = st.energy_capacity * rng.next_uniform();
    p.storages.push_back(std::move(st));
  }

  // Ring of directional links between consecutive zones.
  for (int z = 0; z + 1 < nz; ++z) {
    const double ntc = 80.0 * rng.next_uniform();
    p.interconnectors.push_back({"Z" + std::to_string(z + 1), "Z" + std::to_string(z + 2), ntc});
    p.interconnectors.push_back({"Z" + std::to_string(z + 2), "Z" + std::to_string(z + 1), ntc});
  }
  return p;
}

}  // namespace synthetic
