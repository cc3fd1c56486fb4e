#include "wsynth/model_store.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wsynth {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

void write_doubles(const fs::path& path, const double* data, std::size_t count) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(data),
            static_cast<std::streamsize>(count * sizeof(double)));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

std::vector<double> read_doubles(const fs::path& path, std::size_t count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<double> data(count);
  in.read(reinterpret_cast<char*>(data.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(count * sizeof(double))) {
    throw std::runtime_error("short read from " + path.string());
  }
  return data;
}

}  // namespace

void save_model(const SpectralModel& model, const std::string& dir) {
  const fs::path root(dir);
  fs::create_directories(root);

  const int n_freq = model.n_freq();
  const Eigen::Index p2 = 2 * model.n_series();

  {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n_freq) * static_cast<std::size_t>(p2));
    for (const auto& mu : model.mu) {
      for (Eigen::Index i = 0; i < mu.size(); ++i) flat.push_back(mu[i]);
    }
    write_doubles(root / "mu.bin", flat.data(), flat.size());
  }
  {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(n_freq) * static_cast<std::size_t>(p2 * p2));
    for (const auto& s : model.sigma) {
      for (Eigen::Index r = 0; r < s.rows(); ++r) {
        for (Eigen::Index c = 0; c < s.cols(); ++c) flat.push_back(s(r, c));
      }
    }
    write_doubles(root / "sigma.bin", flat.data(), flat.size());
  }

  json manifest;
  manifest["format_version"] = kFormatVersion;
  manifest["model_version"] = model.model_version;
  manifest["tau_max"] = model.tau_max;
  manifest["n_freq"] = n_freq;
  manifest["reference_year"] = model.reference_year;
  manifest["years_used"] = model.years_used;
  manifest["byte_order"] = "little";

  json series = json::array();
  for (std::size_t p = 0; p < model.series.size(); ++p) {
    const SeriesMeta& m = model.series[p];
    json s;
    s["id"] = m.id;
    s["parameter"] = to_string(m.parameter);
    s["latitude"] = m.latitude;
    s["longitude"] = m.longitude;
    s["unit"] = m.unit;
    s["ecdf_count"] = model.cdfs[p].size();
    s["has_solar_profile"] = model.solar_profiles.count(static_cast<int>(p)) > 0;
    series.push_back(std::move(s));

    const auto& sorted = model.cdfs[p].sorted_values();
    write_doubles(root / ("ecdf_" + m.id + ".bin"), sorted.data(), sorted.size());
    const auto it = model.solar_profiles.find(static_cast<int>(p));
    if (it != model.solar_profiles.end()) {
      write_doubles(root / ("solar_profile_" + m.id + ".bin"), it->second.means.data(),
                    it->second.means.size());
    }
  }
  manifest["series"] = std::move(series);

  std::ofstream out(root / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest.json in " + dir);
  out << manifest.dump(2) << "\n";
}

SpectralModel load_model(const std::string& dir) {
  const fs::path root(dir);
  std::ifstream in(root / "manifest.json");
  if (!in) throw std::runtime_error("cannot open " + (root / "manifest.json").string());
  json manifest = json::parse(in);

  if (manifest.at("format_version").get<int>() != kFormatVersion) {
    throw std::runtime_error("unsupported model format version");
  }

  SpectralModel model;
  model.tau_max = manifest.at("tau_max").get<int>();
  model.model_version = manifest.at("model_version").get<std::string>();
  model.reference_year = manifest.at("reference_year").get<int>();
  model.years_used = manifest.at("years_used").get<std::vector<int>>();
  const int n_freq = manifest.at("n_freq").get<int>();
  if (n_freq != model.tau_max / 2 + 1) {
    throw std::runtime_error("manifest n_freq inconsistent with tau_max");
  }

  for (const auto& s : manifest.at("series")) {
    SeriesMeta m;
    m.id = s.at("id").get<std::string>();
    m.parameter = parameter_from_string(s.at("parameter").get<std::string>());
    m.latitude = s.at("latitude").get<double>();
    m.longitude = s.at("longitude").get<double>();
    m.unit = s.value("unit", "");
    model.series.push_back(std::move(m));
  }
  const Eigen::Index p_max = model.n_series();
  const Eigen::Index p2 = 2 * p_max;

  {
    const auto flat = read_doubles(root / "mu.bin",
                                   static_cast<std::size_t>(n_freq) * static_cast<std::size_t>(p2));
    model.mu.assign(static_cast<std::size_t>(n_freq), Eigen::VectorXd(p2));
    std::size_t idx = 0;
    for (auto& mu : model.mu) {
      for (Eigen::Index i = 0; i < p2; ++i) mu[i] = flat[idx++];
    }
  }
  {
    const auto flat = read_doubles(
        root / "sigma.bin",
        static_cast<std::size_t>(n_freq) * static_cast<std::size_t>(p2 * p2));
    model.sigma.assign(static_cast<std::size_t>(n_freq), Eigen::MatrixXd(p2, p2));
    std::size_t idx = 0;
    for (auto& s : model.sigma) {
      for (Eigen::Index r = 0; r < p2; ++r) {
        for (Eigen::Index c = 0; c < p2; ++c) s(r, c) = flat[idx++];
      }
    }
  }

  std::size_t p = 0;
  for (const auto& s : manifest.at("series")) {
    const std::string id = s.at("id").get<std::string>();
    const std::size_t count = s.at("ecdf_count").get<std::size_t>();
    model.cdfs.push_back(EmpiricalCdf::from_sorted(read_doubles(root / ("ecdf_" + id + ".bin"), count)));
    if (s.value("has_solar_profile", false)) {
      HourlyMeanProfile profile;
      profile.location_id = id;
      profile.means = read_doubles(root / ("solar_profile_" + id + ".bin"), kHoursPerYear);
      model.solar_profiles.emplace(static_cast<int>(p), std::move(profile));
    }
    ++p;
  }
  return model;
}

}  // namespace wsynth
