#include "wsynth/panel.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wsynth/calendar.hpp"

namespace wsynth {

using nlohmann::json;

std::string to_string(Parameter p) {
  switch (p) {
    case Parameter::kTemperature: return "temperature";
    case Parameter::kWindSpeed: return "wind_speed";
    case Parameter::kSolarRadiation: return "solar_radiation";
    case Parameter::kOther: return "other";
  }
  return "other";
}

Parameter parameter_from_string(const std::string& s) {
  if (s == "temperature") return Parameter::kTemperature;
  if (s == "wind_speed") return Parameter::kWindSpeed;
  if (s == "solar_radiation") return Parameter::kSolarRadiation;
  if (s == "other") return Parameter::kOther;
  throw std::runtime_error("unknown parameter type: " + s);
}

int WeatherPanel::series_index(const std::string& id) const {
  for (std::size_t i = 0; i < meta.size(); ++i) {
    if (meta[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<SeriesMeta> parse_meta_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.is_array()) throw std::runtime_error("metadata file must be a JSON array");
  std::vector<SeriesMeta> metas;
  for (const auto& item : j) {
    SeriesMeta m;
    m.id = item.at("id").get<std::string>();
    m.parameter = parameter_from_string(item.at("parameter").get<std::string>());
    m.latitude = item.at("latitude").get<double>();
    m.longitude = item.at("longitude").get<double>();
    m.unit = item.value("unit", "");
    if (m.latitude < -90.0 || m.latitude > 90.0) {
      throw std::runtime_error("latitude out of range for series " + m.id);
    }
    if (m.longitude < -180.0 || m.longitude > 180.0) {
      throw std::runtime_error("longitude out of range for series " + m.id);
    }
    for (const auto& other : metas) {
      if (other.id == m.id) throw std::runtime_error("duplicate series id in metadata: " + m.id);
    }
    metas.push_back(std::move(m));
  }
  return metas;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

WeatherPanel parse_panel(const std::string& csv_text, const std::string& meta_json_text) {
  const std::vector<SeriesMeta> metas = parse_meta_json(meta_json_text);

  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty data file");
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "timestamp") {
    throw std::runtime_error("first CSV column must be 'timestamp'");
  }

  WeatherPanel panel;
  const std::size_t p_max = header.size() - 1;
  panel.meta.reserve(p_max);
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string& id = header[c];
    bool found = false;
    for (const auto& m : metas) {
      if (m.id == id) {
        panel.meta.push_back(m);
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::runtime_error("missing column metadata for series '" + id + "'");
    }
  }
  if (metas.size() > p_max) {
    std::cerr << "warning: metadata file lists " << metas.size()
              << " series but data has " << p_max << " columns\n";
  }

  std::vector<std::int64_t> timestamps;
  std::vector<double> cells;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    const auto fields = split_csv_line(line);
    if (fields.size() != p_max + 1) {
      throw std::runtime_error("row " + std::to_string(row) + ": expected " +
                               std::to_string(p_max + 1) + " fields, got " +
                               std::to_string(fields.size()));
    }
    std::int64_t h = 0;
    if (!parse_iso_hour(fields[0], h)) {
      throw std::runtime_error("row " + std::to_string(row) +
                               ": malformed timestamp '" + fields[0] + "'");
    }
    if (!timestamps.empty()) {
      if (h <= timestamps.back()) {
        throw std::runtime_error("non-monotonic timestamps at row " + std::to_string(row));
      }
      if (h != timestamps.back() + 1) {
        throw std::runtime_error("gapped timestamps at row " + std::to_string(row) +
                                 " (" + fields[0] + ")");
      }
    }
    timestamps.push_back(h);
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const std::string& cell = fields[c];
      if (cell.empty()) {
        throw std::runtime_error("missing value at row " + std::to_string(row) +
                                 ", column '" + header[c] + "'");
      }
      errno = 0;
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v)) {
        throw std::runtime_error("non-numeric cell '" + cell + "' at row " +
                                 std::to_string(row) + ", column '" + header[c] + "'");
      }
      cells.push_back(v);
    }
  }
  if (timestamps.empty()) throw std::runtime_error("data file has no rows");

  panel.timestamps = std::move(timestamps);
  panel.values.resize(static_cast<Eigen::Index>(panel.timestamps.size()),
                      static_cast<Eigen::Index>(p_max));
  for (Eigen::Index r = 0; r < panel.values.rows(); ++r) {
    for (Eigen::Index c = 0; c < panel.values.cols(); ++c) {
      panel.values(r, c) = cells[static_cast<std::size_t>(r) * p_max +
                                 static_cast<std::size_t>(c)];
    }
  }
  return panel;
}

WeatherPanel load_panel(const std::string& data_path, const std::string& meta_path) {
  return parse_panel(read_file(data_path), read_file(meta_path));
}

std::vector<double> YearTensor::flat_series(Eigen::Index p) const {
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(n_years()) * kHoursPerYear);
  for (const auto& y : years) {
    for (Eigen::Index t = 0; t < y.rows(); ++t) flat.push_back(y(t, p));
  }
  return flat;
}

void YearTensor::set_flat_series(Eigen::Index p, const std::vector<double>& flat) {
  if (flat.size() != static_cast<std::size_t>(n_years()) * kHoursPerYear) {
    throw std::invalid_argument("set_flat_series: wrong length");
  }
  std::size_t i = 0;
  for (auto& y : years) {
    for (Eigen::Index t = 0; t < y.rows(); ++t) y(t, p) = flat[i++];
  }
}

YearTensor segment_years(const WeatherPanel& panel, int anchor_month, int anchor_day) {
  YearTensor tensor;
  tensor.meta = panel.meta;
  const Eigen::Index t_max = panel.rows();
  const Eigen::Index p_max = panel.cols();

  // Locate year starts: rows at anchor date 00:00.
  std::size_t start = 0;
  bool found = false;
  for (std::size_t i = 0; i < panel.timestamps.size(); ++i) {
    const CivilTime t = civil_from_epoch_hours(panel.timestamps[i]);
    if (t.month == anchor_month && t.day == anchor_day && t.hour == 0) {
      start = i;
      found = true;
      break;
    }
  }
  if (!found) throw std::runtime_error("fewer than 2 complete years in panel");
  if (start > 0) {
    std::cerr << "warning: discarding " << start << " leading rows before first year start\n";
  }

  std::size_t pos = start;
  while (true) {
    const CivilTime begin = civil_from_epoch_hours(panel.timestamps[pos]);
    const int year = begin.year;
    // Length of the calendar year starting here, in hours.
    const std::int64_t next_start =
        epoch_hours(CivilTime{year + 1, anchor_month, anchor_day, 0});
    const std::int64_t len = next_start - panel.timestamps[pos];
    if (pos + static_cast<std::size_t>(len) > static_cast<std::size_t>(t_max)) break;

    Eigen::MatrixXd slice(kHoursPerYear, p_max);
    Eigen::Index out_row = 0;
    for (std::int64_t off = 0; off < len; ++off) {
      const std::size_t r = pos + static_cast<std::size_t>(off);
      const CivilTime t = civil_from_epoch_hours(panel.timestamps[r]);
      if (t.month == 2 && t.day == 29) continue;  // drop leap day
      slice.row(out_row) = panel.values.row(static_cast<Eigen::Index>(r));
      tensor.kept_timestamps.push_back(panel.timestamps[r]);
      ++out_row;
    }
    if (out_row != kHoursPerYear) {
      throw std::runtime_error("internal error: year " + std::to_string(year) +
                               " reduced to " + std::to_string(out_row) + " hours");
    }
    tensor.years.push_back(std::move(slice));
    tensor.year_labels.push_back(year);
    pos += static_cast<std::size_t>(len);
    if (pos >= static_cast<std::size_t>(t_max)) break;
  }

  const std::size_t trailing = static_cast<std::size_t>(t_max) - pos;
  if (trailing > 0) {
    std::cerr << "warning: discarding " << trailing << " trailing rows after last complete year\n";
  }
  if (tensor.years.size() < 2) {
    throw std::runtime_error("fewer than 2 complete years after trimming (got " +
                             std::to_string(tensor.years.size()) + ")");
  }
  return tensor;
}

void write_panel_csv(const std::string& path,
                     const std::vector<std::int64_t>& timestamps,
                     const Eigen::MatrixXd& values,
                     const std::vector<SeriesMeta>& meta) {
  if (static_cast<Eigen::Index>(timestamps.size()) != values.rows() ||
      static_cast<Eigen::Index>(meta.size()) != values.cols()) {
    throw std::invalid_argument("write_panel_csv: shape mismatch");
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  std::string header = "timestamp";
  for (const auto& m : meta) header += "," + m.id;
  std::fprintf(f, "%s\n", header.c_str());
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    std::fprintf(f, "%s", format_iso_hour(timestamps[static_cast<std::size_t>(r)]).c_str());
    for (Eigen::Index c = 0; c < values.cols(); ++c) {
      std::fprintf(f, ",%.17g", values(r, c));
    }
    std::fprintf(f, "\n");
  }
  std::fclose(f);
}

}  // namespace wsynth
