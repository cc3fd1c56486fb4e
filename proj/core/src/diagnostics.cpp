#include "wsynth/diagnostics.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wsynth/stats.hpp"

namespace wsynth {

namespace fs = std::filesystem;
using nlohmann::json;

WindowedAcf windowed_lag1_acf(std::span<const double> sequence, int window, int stride) {
  WindowedAcf out;
  out.bound = 1.96 / std::sqrt(static_cast<double>(window));
  const int n = static_cast<int>(sequence.size());
  for (int off = 0; off + window <= n; off += stride) {
    const auto acf = autocorrelation(sequence.subspan(static_cast<std::size_t>(off),
                                                      static_cast<std::size_t>(window)),
                                     1);
    out.offsets.push_back(off);
    out.lag1.push_back(acf[1]);
  }
  return out;
}

namespace {

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_diagnostics(const FitArtifacts& artifacts, const std::string& out_dir,
                       const DiagnosticsOptions& options) {
  fs::create_directories(out_dir);
  const fs::path root(out_dir);
  const YearTensor& tensor = artifacts.gaussianized;
  const CoefficientTensor& ct = artifacts.coefficients;
  const Eigen::Index p_max = tensor.n_series();
  const Eigen::Index i_max = tensor.n_years();
  const int n_freq = ct.n_freq();
  char buf[64];

  // Per-series mean coefficient magnitude over years, as a sequence over k.
  std::vector<std::vector<double>> mag(static_cast<std::size_t>(p_max),
                                       std::vector<double>(static_cast<std::size_t>(n_freq)));
  for (int k = 0; k < n_freq; ++k) {
    for (Eigen::Index p = 0; p < p_max; ++p) {
      double m = 0.0;
      for (Eigen::Index i = 0; i < i_max; ++i) {
        m += std::abs(ct.coeff[static_cast<std::size_t>(k)](p, i));
      }
      mag[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)] =
          m / static_cast<double>(i_max);
    }
  }

  {
    auto out = open_csv(root / "acf_time.csv");
    out << "lag";
    for (const auto& m : tensor.meta) out << ",acf_" << m.id;
    out << "\n";
    std::vector<std::vector<double>> acfs;
    for (Eigen::Index p = 0; p < p_max; ++p) {
      acfs.push_back(autocorrelation(tensor.flat_series(p), options.time_acf_max_lag));
    }
    for (int lag = 0; lag <= options.time_acf_max_lag; ++lag) {
      out << lag;
      for (const auto& a : acfs) {
        std::snprintf(buf, sizeof(buf), ",%.10g", a[static_cast<std::size_t>(lag)]);
        out << buf;
      }
      out << "\n";
    }
  }

  {
    auto out = open_csv(root / "acf_frequency.csv");
    out << "lag";
    for (const auto& m : tensor.meta) out << ",acf_" << m.id;
    out << "\n";
    std::vector<std::vector<double>> acfs;
    for (Eigen::Index p = 0; p < p_max; ++p) {
      // Skip DC: its magnitude is an outlier that would dominate the mean.
      std::span<const double> seq(mag[static_cast<std::size_t>(p)]);
      acfs.push_back(autocorrelation(seq.subspan(1), options.freq_acf_max_lag));
    }
    for (int lag = 0; lag <= options.freq_acf_max_lag; ++lag) {
      out << lag;
      for (const auto& a : acfs) {
        std::snprintf(buf, sizeof(buf), ",%.10g", a[static_cast<std::size_t>(lag)]);
        out << buf;
      }
      out << "\n";
    }
  }

  {
    auto out = open_csv(root / "acf_frequency_windowed.csv");
    out << "offset";
    for (const auto& m : tensor.meta) out << ",acf1_" << m.id;
    out << ",bound\n";
    std::vector<WindowedAcf> wins;
    for (Eigen::Index p = 0; p < p_max; ++p) {
      std::span<const double> seq(mag[static_cast<std::size_t>(p)]);
      wins.push_back(windowed_lag1_acf(seq.subspan(1), options.freq_window,
                                       options.freq_window_stride));
    }
    for (std::size_t w = 0; w < wins.front().offsets.size(); ++w) {
      out << wins.front().offsets[w];
      for (const auto& win : wins) {
        std::snprintf(buf, sizeof(buf), ",%.10g", win.lag1[w]);
        out << buf;
      }
      std::snprintf(buf, sizeof(buf), ",%.10g", wins.front().bound);
      out << buf << "\n";
    }
  }

  // Per-coefficient normality p-values feed both spectrum.csv and the
  // summary JSON.
  const NormalityReport normality =
      normality_diagnostic(ct, options.normality_alpha, 20);

  {
    auto out = open_csv(root / "spectrum.csv");
    out << "k,period_hours";
    for (const auto& m : tensor.meta) out << ",mag_mean_" << m.id;
    for (const auto& m : tensor.meta) out << ",phase_" << m.id;
    for (const auto& m : tensor.meta) {
      out << ",p_normal_re_" << m.id << ",p_normal_im_" << m.id;
    }
    for (Eigen::Index a = 0; a < p_max; ++a) {
      for (Eigen::Index b = a + 1; b < p_max; ++b) {
        out << ",corr_re_" << tensor.meta[static_cast<std::size_t>(a)].id << "__"
            << tensor.meta[static_cast<std::size_t>(b)].id;
      }
    }
    out << "\n";

    std::vector<double> re_a(static_cast<std::size_t>(i_max));
    std::vector<double> re_b(static_cast<std::size_t>(i_max));
    std::vector<double> im(static_cast<std::size_t>(i_max));
    std::vector<double> phases(static_cast<std::size_t>(i_max));
    for (int k = 0; k < n_freq; ++k) {
      const Eigen::MatrixXcd& c = ct.coeff[static_cast<std::size_t>(k)];
      const double period = k == 0 ? 0.0 : static_cast<double>(ct.tau_max) / k;
      out << (k + 1);
      std::snprintf(buf, sizeof(buf), ",%.10g", period);
      out << buf;
      for (Eigen::Index p = 0; p < p_max; ++p) {
        std::snprintf(buf, sizeof(buf), ",%.10g",
                      mag[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)]);
        out << buf;
      }
      for (Eigen::Index p = 0; p < p_max; ++p) {
        for (Eigen::Index i = 0; i < i_max; ++i) {
          phases[static_cast<std::size_t>(i)] = std::arg(c(p, i));
        }
        std::snprintf(buf, sizeof(buf), ",%.10g", circular_mean(phases));
        out << buf;
      }
      for (Eigen::Index p = 0; p < p_max; ++p) {
        for (Eigen::Index i = 0; i < i_max; ++i) {
          re_a[static_cast<std::size_t>(i)] = c(p, i).real();
          im[static_cast<std::size_t>(i)] = c(p, i).imag();
        }
        const NormalityTest tr = anderson_darling_normality(re_a);
        const NormalityTest ti = anderson_darling_normality(im);
        std::snprintf(buf, sizeof(buf), ",%.6g,%.6g", tr.p_value, ti.p_value);
        out << buf;
      }
      for (Eigen::Index a = 0; a < p_max; ++a) {
        for (Eigen::Index i = 0; i < i_max; ++i) re_a[static_cast<std::size_t>(i)] = c(a, i).real();
        for (Eigen::Index b = a + 1; b < p_max; ++b) {
          for (Eigen::Index i = 0; i < i_max; ++i) re_b[static_cast<std::size_t>(i)] = c(b, i).real();
          std::snprintf(buf, sizeof(buf), ",%.10g", correlation(re_a, re_b));
          out << buf;
        }
      }
      out << "\n";
    }
  }

  {
    auto out = open_csv(root / "noise_intensity.csv");
    out << "id,latitude,longitude,parameter,noise_intensity\n";
    for (Eigen::Index p = 0; p < p_max; ++p) {
      const SeriesMeta& m = tensor.meta[static_cast<std::size_t>(p)];
      double acc = 0.0;
      int count = 0;
      for (int k = options.noise_band_min_bin; k < n_freq; ++k) {
        acc += mag[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)];
        ++count;
      }
      std::snprintf(buf, sizeof(buf), "%.6g,%.6g", m.latitude, m.longitude);
      out << m.id << "," << buf << "," << to_string(m.parameter);
      std::snprintf(buf, sizeof(buf), ",%.10g", count > 0 ? acc / count : 0.0);
      out << buf << "\n";
    }
  }

  {
    json j;
    j["alpha"] = normality.alpha;
    j["tested"] = normality.tested;
    j["rejected"] = normality.rejected;
    j["rejection_fraction"] = normality.rejection_fraction();
    j["low_power"] = normality.low_power;
    json worst = json::array();
    for (const auto& o : normality.worst) {
      worst.push_back({{"k", o.k + 1},
                       {"series", tensor.meta[static_cast<std::size_t>(o.series)].id},
                       {"part", o.imaginary_part ? "im" : "re"},
                       {"p_value", o.p_value}});
    }
    j["worst"] = std::move(worst);
    std::ofstream out(root / "normality_summary.json");
    if (!out) throw std::runtime_error("cannot write normality_summary.json");
    out << j.dump(2) << "\n";
  }
}

}  // namespace wsynth
