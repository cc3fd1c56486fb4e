#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace wsynth {

enum class Parameter { kTemperature, kWindSpeed, kSolarRadiation, kOther };

std::string to_string(Parameter p);
Parameter parameter_from_string(const std::string& s);

struct SeriesMeta {
  std::string id;
  Parameter parameter = Parameter::kOther;
  double latitude = 0.0;   // degrees, [-90, 90]
  double longitude = 0.0;  // degrees, [-180, 180]
  std::string unit;
};

// Hourly multi-series panel. Rows are strictly consecutive hours; one meta
// entry per column; no missing cells survive ingestion.
struct WeatherPanel {
  std::vector<std::int64_t> timestamps;  // epoch hours, ascending, step 1
  Eigen::MatrixXd values;                // t_max x p_max
  std::vector<SeriesMeta> meta;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
  int series_index(const std::string& id) const;  // -1 if absent
};

// Panel reshaped to whole calendar years of fixed length 8760. Feb 29 rows
// of leap years are dropped; kept_timestamps preserves the surviving rows'
// instants in (year, hour) order.
struct YearTensor {
  std::vector<Eigen::MatrixXd> years;  // each 8760 x p_max
  std::vector<int> year_labels;        // calendar year of each slice
  std::vector<SeriesMeta> meta;
  std::vector<std::int64_t> kept_timestamps;  // 8760 * years.size()

  int n_years() const { return static_cast<int>(years.size()); }
  Eigen::Index n_series() const { return years.empty() ? 0 : years.front().cols(); }

  // Concatenate one series across years in (year, hour) order.
  std::vector<double> flat_series(Eigen::Index p) const;
  // Overwrite one series from a flat (year, hour) vector.
  void set_flat_series(Eigen::Index p, const std::vector<double>& flat);
};

// CSV (timestamp, one column per series id) + JSON metadata array.
// Throws std::runtime_error with a message naming the offending column,
// timestamp or cell on any validation failure.
WeatherPanel load_panel(const std::string& data_path, const std::string& meta_path);

// Parse already-loaded CSV/JSON text; load_panel is a thin file wrapper.
WeatherPanel parse_panel(const std::string& csv_text, const std::string& meta_json_text);

// Reshape into complete calendar years (Jan 1 00:00 anchored by default).
// Partial leading/trailing years are discarded with a warning to stderr.
// Throws if fewer than 2 complete years remain.
YearTensor segment_years(const WeatherPanel& panel, int anchor_month = 1, int anchor_day = 1);

void write_panel_csv(const std::string& path,
                     const std::vector<std::int64_t>& timestamps,
                     const Eigen::MatrixXd& values,
                     const std::vector<SeriesMeta>& meta);

}  // namespace wsynth
