#include "wsynth/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wsynth/calendar.hpp"
#include "wsynth/rng.hpp"
#include "wsynth/solar.hpp"

namespace wsynth {

namespace fs = std::filesystem;
using nlohmann::json;

FitArtifacts fit_model_artifacts(const WeatherPanel& panel, const FitOptions& options) {
  YearTensor tensor = segment_years(panel, options.anchor_month, options.anchor_day);
  const Eigen::Index p_max = tensor.n_series();
  const int n_years = tensor.n_years();

  // Solar preprocessing works on the flattened (year, hour) series of the
  // trimmed panel: fill nights with the AR continuation, take the long-term
  // hourly mean, keep only the deviation from it.
  std::map<int, HourlyMeanProfile> profiles;
  for (Eigen::Index p = 0; p < p_max; ++p) {
    const SeriesMeta& m = tensor.meta[static_cast<std::size_t>(p)];
    if (m.parameter != Parameter::kSolarRadiation) continue;
    std::vector<double> flat = tensor.flat_series(p);
    const NightMask mask = night_mask(tensor.kept_timestamps, m.latitude, m.longitude);
    flat = ar_fill_night(flat, mask, options.max_ar_order);
    HourlyMeanProfile profile = hourly_mean_profile(flat, n_years, m.id);
    flat = deviation_normalize(flat, profile, options.solar_floor_eps);
    tensor.set_flat_series(p, flat);
    profiles.emplace(static_cast<int>(p), std::move(profile));
  }

  // Marginal transform to N(0,1) per series, ECDF kept for generation.
  std::vector<EmpiricalCdf> cdfs;
  cdfs.reserve(static_cast<std::size_t>(p_max));
  for (Eigen::Index p = 0; p < p_max; ++p) {
    std::vector<double> flat = tensor.flat_series(p);
    EmpiricalCdf cdf = EmpiricalCdf::fit(flat);
    tensor.set_flat_series(p, cdf.gaussianize(flat));
    cdfs.push_back(std::move(cdf));
  }

  // Generated years carry timestamps of a non-leap training year.
  int reference_year = tensor.year_labels.front();
  for (int y : tensor.year_labels) {
    if (!is_leap_year(y)) {
      reference_year = y;
      break;
    }
  }

  FitArtifacts artifacts;
  artifacts.model = fit_spectral_model(tensor, std::move(cdfs), std::move(profiles),
                                       reference_year);
  artifacts.coefficients = dft_tensor(tensor);
  artifacts.gaussianized = std::move(tensor);
  return artifacts;
}

SpectralModel fit_model(const WeatherPanel& panel, const FitOptions& options) {
  return fit_model_artifacts(panel, options).model;
}

std::vector<std::string> write_ensemble(const SpectralModel& model, std::uint64_t master_seed,
                                        int count, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const YearGenerator generator(model);

  std::vector<std::string> files;
  json seeds = json::array();
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = derive_stream_seed(master_seed, static_cast<std::uint64_t>(i));
    const GeneratedYear year = generator.generate(seed);
    const std::string name = "year_" + std::to_string(seed) + ".csv";
    write_panel_csv((fs::path(out_dir) / name).string(), year.timestamps, year.values,
                    model.series);
    files.push_back(name);
    seeds.push_back(seed);
  }

  json manifest;
  manifest["model_version"] = model.model_version;
  manifest["master_seed"] = master_seed;
  manifest["count"] = count;
  manifest["seeds"] = std::move(seeds);
  manifest["files"] = files;
  std::ofstream out(fs::path(out_dir) / "ensemble_manifest.json");
  if (!out) throw std::runtime_error("cannot write ensemble manifest in " + out_dir);
  out << manifest.dump(2) << "\n";
  return files;
}

}  // namespace wsynth
