#include "wsynth/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wsynth/simplex.hpp"

namespace wsynth {

using nlohmann::json;

double wind_to_power(double speed, double capacity_mw, const WindCurve& curve) {
  if (speed < curve.cut_in || speed >= curve.cut_out) return 0.0;
  if (speed >= curve.rated) return capacity_mw;
  const double v3 = speed * speed * speed;
  const double ci3 = curve.cut_in * curve.cut_in * curve.cut_in;
  const double r3 = curve.rated * curve.rated * curve.rated;
  return capacity_mw * (v3 - ci3) / (r3 - ci3);
}

double solar_to_power(double irradiance_w_m2, double capacity_mw, double performance_ratio) {
  const double frac = std::min(std::max(irradiance_w_m2, 0.0) / 1000.0, 1.0);
  return capacity_mw * performance_ratio * frac;
}

double temperature_to_load(double temperature_c, double base_load_mw, const HeatingLoad& h) {
  return base_load_mw + h.slope * std::max(0.0, h.t_ref - temperature_c);
}

int DispatchProblem::zone_index(const std::string& id) const {
  for (std::size_t i = 0; i < zones.size(); ++i) {
    if (zones[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

void DispatchProblem::validate() const {
  for (const auto& p : plants) {
    if (zone_index(p.zone) < 0) throw std::runtime_error("plant " + p.id + " references unknown zone " + p.zone);
    if (p.capacity <= 0.0) throw std::runtime_error("plant " + p.id + " needs capacity > 0");
    if (!std::isfinite(p.marginal_cost) || p.marginal_cost < 0.0) {
      throw std::runtime_error("plant " + p.id + " needs a finite nonnegative cost");
    }
  }
  for (const auto& s : storages) {
    if (zone_index(s.zone) < 0) throw std::runtime_error("storage " + s.id + " references unknown zone " + s.zone);
    if (s.efficiency <= 0.0 || s.efficiency > 1.0) {
      throw std::runtime_error("storage " + s.id + " needs efficiency in (0, 1]");
    }
    if (s.initial_energy < 0.0 || s.initial_energy > s.energy_capacity) {
      throw std::runtime_error("storage " + s.id + " initial energy outside [0, capacity]");
    }
    if (s.max_charge < 0.0 || s.max_discharge < 0.0) {
      throw std::runtime_error("storage " + s.id + " needs nonnegative power limits");
    }
  }
  for (const auto& l : interconnectors) {
    if (zone_index(l.from) < 0 || zone_index(l.to) < 0) {
      throw std::runtime_error("interconnector " + l.from + "->" + l.to + " references unknown zone");
    }
    if (l.ntc < 0.0) throw std::runtime_error("interconnector NTC must be >= 0");
  }
  for (const auto& c : capacity_map) {
    if (zone_index(c.zone) < 0) throw std::runtime_error("capacity map references unknown zone " + c.zone);
    if (c.technology != "wind" && c.technology != "solar") {
      throw std::runtime_error("capacity map technology must be wind or solar, got " + c.technology);
    }
  }
  if (voll <= 0.0) throw std::runtime_error("VOLL must be positive");
}

DispatchProblem parse_dispatch_problem(const std::string& text) {
  json j = json::parse(text);
  DispatchProblem p;
  for (const auto& z : j.value("zones", json::array())) {
    Zone zone;
    zone.id = z.at("id").get<std::string>();
    zone.base_load = z.value("base_load", 0.0);
    if (z.contains("heating")) {
      zone.heating.t_ref = z["heating"].value("t_ref", 15.0);
      zone.heating.slope = z["heating"].value("slope", 0.0);
    }
    zone.temperature_series = z.value("temperature_series", "");
    if (z.contains("demand")) zone.demand = z["demand"].get<std::vector<double>>();
    if (z.contains("res_availability")) {
      zone.res_availability = z["res_availability"].get<std::vector<double>>();
    }
    p.zones.push_back(std::move(zone));
  }
  for (const auto& k : j.value("plants", json::array())) {
    Plant plant;
    plant.id = k.at("id").get<std::string>();
    plant.zone = k.at("zone").get<std::string>();
    plant.fuel = k.value("fuel", "other");
    plant.capacity = k.at("capacity").get<double>();
    plant.marginal_cost = k.at("cost").get<double>();
    p.plants.push_back(std::move(plant));
  }
  for (const auto& s : j.value("storages", json::array())) {
    Storage st;
    st.id = s.at("id").get<std::string>();
    st.zone = s.at("zone").get<std::string>();
    st.max_charge = s.at("max_charge").get<double>();
    st.max_discharge = s.at("max_discharge").get<double>();
    st.energy_capacity = s.at("energy_capacity").get<double>();
    st.efficiency = s.at("efficiency").get<double>();
    st.initial_energy = s.value("initial_energy", 0.0);
    p.storages.push_back(std::move(st));
  }
  for (const auto& l : j.value("interconnectors", json::array())) {
    Interconnector ic;
    ic.from = l.at("from").get<std::string>();
    ic.to = l.at("to").get<std::string>();
    ic.ntc = l.at("ntc").get<double>();
    p.interconnectors.push_back(std::move(ic));
  }
  for (const auto& c : j.value("capacity_map", json::array())) {
    CapacityEntry e;
    e.zone = c.at("zone").get<std::string>();
    e.technology = c.at("technology").get<std::string>();
    e.series = c.at("series").get<std::string>();
    e.capacity = c.at("capacity").get<double>();
    p.capacity_map.push_back(std::move(e));
  }
  if (j.contains("wind_curve")) {
    p.wind_curve.cut_in = j["wind_curve"].value("cut_in", 3.0);
    p.wind_curve.rated = j["wind_curve"].value("rated", 12.0);
    p.wind_curve.cut_out = j["wind_curve"].value("cut_out", 25.0);
  }
  if (j.contains("solar")) {
    p.solar_performance_ratio = j["solar"].value("performance_ratio", 0.9);
  }
  p.voll = j.value("voll", 3000.0);
  p.block_hours = j.value("block_hours", 168);
  p.validate();
  return p;
}

DispatchProblem load_dispatch_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open problem file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dispatch_problem(ss.str());
}

HourlyInputs build_hourly_inputs(const DispatchProblem& problem,
                                 const Eigen::MatrixXd& weather,
                                 const std::vector<SeriesMeta>& meta, int horizon) {
  if (horizon > weather.rows()) {
    throw std::runtime_error("dispatch horizon exceeds weather data length");
  }
  const int nz = static_cast<int>(problem.zones.size());
  HourlyInputs inputs;
  inputs.demand = Eigen::MatrixXd::Zero(horizon, nz);
  inputs.availability = Eigen::MatrixXd::Zero(horizon, nz);

  auto series_column = [&](const std::string& id) -> int {
    for (std::size_t i = 0; i < meta.size(); ++i) {
      if (meta[i].id == id) return static_cast<int>(i);
    }
    throw std::runtime_error("weather data has no series '" + id + "'");
  };

  for (int z = 0; z < nz; ++z) {
    const Zone& zone = problem.zones[static_cast<std::size_t>(z)];
    if (!zone.demand.empty()) {
      if (static_cast<int>(zone.demand.size()) < horizon) {
        throw std::runtime_error("zone " + zone.id + " demand array shorter than horizon");
      }
      for (int t = 0; t < horizon; ++t) inputs.demand(t, z) = zone.demand[static_cast<std::size_t>(t)];
    } else if (!zone.temperature_series.empty()) {
      const int col = series_column(zone.temperature_series);
      for (int t = 0; t < horizon; ++t) {
        inputs.demand(t, z) = temperature_to_load(weather(t, col), zone.base_load, zone.heating);
      }
    } else {
      for (int t = 0; t < horizon; ++t) inputs.demand(t, z) = zone.base_load;
    }
    if (!zone.res_availability.empty()) {
      if (static_cast<int>(zone.res_availability.size()) < horizon) {
        throw std::runtime_error("zone " + zone.id + " res_availability array shorter than horizon");
      }
      for (int t = 0; t < horizon; ++t) {
        inputs.availability(t, z) = zone.res_availability[static_cast<std::size_t>(t)];
      }
    }
  }

  for (const auto& entry : problem.capacity_map) {
    const int z = problem.zone_index(entry.zone);
    const int col = series_column(entry.series);
    for (int t = 0; t < horizon; ++t) {
      const double w = weather(t, col);
      const double mw = entry.technology == "wind"
                            ? wind_to_power(w, entry.capacity, problem.wind_curve)
                            : solar_to_power(w, entry.capacity, problem.solar_performance_ratio);
      inputs.availability(t, z) += mw;
    }
  }
  return inputs;
}

namespace {

// Column layout of one block LP, per hour:
//   plants | storage charge | storage discharge | storage energy |
//   res per zone | lost load per zone | interconnector flows
struct BlockLayout {
  int nk, ns, nz, na, per_hour;

  explicit BlockLayout(const DispatchProblem& p)
      : nk(static_cast<int>(p.plants.size())),
        ns(static_cast<int>(p.storages.size())),
        nz(static_cast<int>(p.zones.size())),
        na(static_cast<int>(p.interconnectors.size())),
        per_hour(nk + 3 * ns + 2 * nz + na) {}

  int plant(int t, int k) const { return t * per_hour + k; }
  int charge(int t, int s) const { return t * per_hour + nk + s; }
  int discharge(int t, int s) const { return t * per_hour + nk + ns + s; }
  int energy(int t, int s) const { return t * per_hour + nk + 2 * ns + s; }
  int res(int t, int z) const { return t * per_hour + nk + 3 * ns + z; }
  int lost(int t, int z) const { return t * per_hour + nk + 3 * ns + nz + z; }
  int flow(int t, int a) const { return t * per_hour + nk + 3 * ns + 2 * nz + a; }

  // Rows: per hour, zone balances then storage state equations.
  int balance_row(int t, int z) const { return t * (nz + ns) + z; }
  int state_row(int t, int s) const { return t * (nz + ns) + nz + s; }
};

// One LP over hours [t0, t0+len) with the storage state entering at
// e_start. Charge adds sqrt(eta) MWh per MW, discharge removes
// 1/sqrt(eta); the split applies the two-way efficiency symmetrically.
DispatchResult solve_block(const DispatchProblem& problem, const HourlyInputs& inputs,
                           int t0, int len, const std::vector<double>& e_start) {
  const BlockLayout L(problem);
  LpProblem lp;
  lp.n_rows = len * (L.nz + L.ns);
  lp.b.assign(static_cast<std::size_t>(lp.n_rows), 0.0);

  lp.cols.reserve(static_cast<std::size_t>(len) * static_cast<std::size_t>(L.per_hour));

  for (int t = 0; t < len; ++t) {
    const int gt = t0 + t;
    for (int k = 0; k < L.nk; ++k) {
      const Plant& pl = problem.plants[static_cast<std::size_t>(k)];
      lp.add_column(pl.marginal_cost, 0.0, pl.capacity,
                    {{L.balance_row(t, problem.zone_index(pl.zone)), 1.0}});
    }
    for (int s = 0; s < L.ns; ++s) {
      const Storage& st = problem.storages[static_cast<std::size_t>(s)];
      const double root_eta = std::sqrt(st.efficiency);
      const int zb = L.balance_row(t, problem.zone_index(st.zone));
      // Charging draws from the zone and adds root_eta per MW to the store.
      lp.add_column(0.0, 0.0, st.max_charge,
                    {{zb, -1.0}, {L.state_row(t, s), -root_eta}});
      // Discharging feeds the zone and drains 1/root_eta per MW.
      lp.add_column(0.0, 0.0, st.max_discharge,
                    {{zb, 1.0}, {L.state_row(t, s), 1.0 / root_eta}});
      // Energy state: E_t - E_{t-1} - root_eta*ch_t + dis_t/root_eta = 0,
      // with E_{-1} moved to the right-hand side for the first hour.
      std::vector<std::pair<int, double>> entries{{L.state_row(t, s), 1.0}};
      if (t + 1 < len) entries.push_back({L.state_row(t + 1, s), -1.0});
      lp.add_column(0.0, 0.0, st.energy_capacity, std::move(entries));
    }
    for (int z = 0; z < L.nz; ++z) {
      lp.add_column(0.0, 0.0, std::max(0.0, inputs.availability(gt, z)),
                    {{L.balance_row(t, z), 1.0}});
    }
    for (int z = 0; z < L.nz; ++z) {
      lp.add_column(problem.voll, 0.0, std::max(0.0, inputs.demand(gt, z)),
                    {{L.balance_row(t, z), 1.0}});
    }
    for (int a = 0; a < L.na; ++a) {
      const Interconnector& ic = problem.interconnectors[static_cast<std::size_t>(a)];
      const int zf = problem.zone_index(ic.from);
      const int zt = problem.zone_index(ic.to);
      lp.add_column(0.0, 0.0, ic.ntc,
                    {{L.balance_row(t, zf), -1.0}, {L.balance_row(t, zt), 1.0}});
    }
  }

  for (int t = 0; t < len; ++t) {
    const int gt = t0 + t;
    for (int z = 0; z < L.nz; ++z) {
      lp.b[static_cast<std::size_t>(L.balance_row(t, z))] = std::max(0.0, inputs.demand(gt, z));
    }
    if (t == 0) {
      for (int s = 0; s < L.ns; ++s) {
        lp.b[static_cast<std::size_t>(L.state_row(0, s))] = e_start[static_cast<std::size_t>(s)];
      }
    }
  }

  // Natural feasible basis: lost load covers every balance row, the energy
  // state variables cover the state rows.
  LpOptions opts;
  opts.initial_basis.reserve(static_cast<std::size_t>(lp.n_rows));
  for (int t = 0; t < len; ++t) {
    for (int z = 0; z < L.nz; ++z) opts.initial_basis.push_back(L.lost(t, z));
    for (int s = 0; s < L.ns; ++s) opts.initial_basis.push_back(L.energy(t, s));
  }

  const LpSolution sol = solve_lp(lp, opts);
  if (sol.status != LpStatus::kOptimal) {
    throw std::runtime_error("dispatch LP did not reach optimality (status " +
                             std::to_string(static_cast<int>(sol.status)) + ")");
  }

  DispatchResult r;
  r.plant_power.resize(len, L.nk);
  r.storage_charge.resize(len, L.ns);
  r.storage_discharge.resize(len, L.ns);
  r.storage_energy.resize(len, L.ns);
  r.res_dispatch.resize(len, L.nz);
  r.lost_load.resize(len, L.nz);
  r.flow.resize(len, L.na);
  r.net_export.resize(len, L.nz);
  r.dumped.resize(len, L.nz);
  r.lp_iterations = sol.iterations;

  for (int t = 0; t < len; ++t) {
    const int gt = t0 + t;
    for (int k = 0; k < L.nk; ++k) r.plant_power(t, k) = sol.x[static_cast<std::size_t>(L.plant(t, k))];
    for (int s = 0; s < L.ns; ++s) {
      r.storage_charge(t, s) = sol.x[static_cast<std::size_t>(L.charge(t, s))];
      r.storage_discharge(t, s) = sol.x[static_cast<std::size_t>(L.discharge(t, s))];
      r.storage_energy(t, s) = sol.x[static_cast<std::size_t>(L.energy(t, s))];
    }
    for (int z = 0; z < L.nz; ++z) {
      r.res_dispatch(t, z) = sol.x[static_cast<std::size_t>(L.res(t, z))];
      r.lost_load(t, z) = sol.x[static_cast<std::size_t>(L.lost(t, z))];
      r.dumped(t, z) = std::max(0.0, inputs.availability(gt, z)) - r.res_dispatch(t, z);
    }
    for (int a = 0; a < L.na; ++a) r.flow(t, a) = sol.x[static_cast<std::size_t>(L.flow(t, a))];
  }

  // Net export and balance residuals from the extracted solution.
  r.max_balance_residual = 0.0;
  for (int t = 0; t < len; ++t) {
    const int gt = t0 + t;
    for (int z = 0; z < L.nz; ++z) {
      double gen = r.res_dispatch(t, z) + r.lost_load(t, z);
      for (int k = 0; k < L.nk; ++k) {
        if (problem.zone_index(problem.plants[static_cast<std::size_t>(k)].zone) == z) {
          gen += r.plant_power(t, k);
        }
      }
      for (int s = 0; s < L.ns; ++s) {
        if (problem.zone_index(problem.storages[static_cast<std::size_t>(s)].zone) == z) {
          gen += r.storage_discharge(t, s) - r.storage_charge(t, s);
        }
      }
      double nex = 0.0;
      for (int a = 0; a < L.na; ++a) {
        const Interconnector& ic = problem.interconnectors[static_cast<std::size_t>(a)];
        if (problem.zone_index(ic.from) == z) nex += r.flow(t, a);
        if (problem.zone_index(ic.to) == z) nex -= r.flow(t, a);
      }
      r.net_export(t, z) = nex;
      const double demand = std::max(0.0, inputs.demand(gt, z));
      r.max_balance_residual =
          std::max(r.max_balance_residual, std::fabs(gen - nex - demand));
    }
  }

  double cost = 0.0, obj = 0.0;
  for (int t = 0; t < len; ++t) {
    for (int k = 0; k < L.nk; ++k) {
      cost += problem.plants[static_cast<std::size_t>(k)].marginal_cost * r.plant_power(t, k);
    }
    for (int z = 0; z < L.nz; ++z) obj += problem.voll * r.lost_load(t, z);
  }
  r.generation_cost = cost;
  r.objective = cost + obj;
  return r;
}

}  // namespace

DispatchResult solve_dispatch(const DispatchProblem& problem, const HourlyInputs& inputs,
                              int horizon) {
  problem.validate();
  if (horizon <= 0 || horizon > inputs.demand.rows()) {
    throw std::runtime_error("solve_dispatch: horizon outside input range");
  }

  const int block = problem.block_hours > 0 ? std::min(problem.block_hours, horizon) : horizon;
  const int ns = static_cast<int>(problem.storages.size());

  std::vector<double> e_state(static_cast<std::size_t>(ns));
  for (int s = 0; s < ns; ++s) {
    e_state[static_cast<std::size_t>(s)] = problem.storages[static_cast<std::size_t>(s)].initial_energy;
  }

  DispatchResult total;
  const BlockLayout L(problem);
  total.plant_power.resize(horizon, L.nk);
  total.storage_charge.resize(horizon, L.ns);
  total.storage_discharge.resize(horizon, L.ns);
  total.storage_energy.resize(horizon, L.ns);
  total.res_dispatch.resize(horizon, L.nz);
  total.lost_load.resize(horizon, L.nz);
  total.flow.resize(horizon, L.na);
  total.net_export.resize(horizon, L.nz);
  total.dumped.resize(horizon, L.nz);

  for (int t0 = 0; t0 < horizon; t0 += block) {
    const int len = std::min(block, horizon - t0);
    DispatchResult part = solve_block(problem, inputs, t0, len, e_state);
    total.plant_power.middleRows(t0, len) = part.plant_power;
    total.storage_charge.middleRows(t0, len) = part.storage_charge;
    total.storage_discharge.middleRows(t0, len) = part.storage_discharge;
    total.storage_energy.middleRows(t0, len) = part.storage_energy;
    total.res_dispatch.middleRows(t0, len) = part.res_dispatch;
    total.lost_load.middleRows(t0, len) = part.lost_load;
    total.flow.middleRows(t0, len) = part.flow;
    total.net_export.middleRows(t0, len) = part.net_export;
    total.dumped.middleRows(t0, len) = part.dumped;
    total.objective += part.objective;
    total.generation_cost += part.generation_cost;
    total.max_balance_residual = std::max(total.max_balance_residual, part.max_balance_residual);
    total.lp_iterations += part.lp_iterations;
    for (int s = 0; s < ns; ++s) {
      e_state[static_cast<std::size_t>(s)] = part.storage_energy(len - 1, s);
    }
  }
  return total;
}

DispatchSummary summarize(const DispatchProblem& problem, const DispatchResult& result) {
  DispatchSummary s;
  s.objective = result.objective;
  const int horizon = result.horizon();

  for (std::size_t k = 0; k < problem.plants.size(); ++k) {
    const Plant& pl = problem.plants[k];
    const std::string key = "gen." + pl.zone + "." + pl.fuel;
    double mwh = 0.0;
    for (int t = 0; t < horizon; ++t) mwh += result.plant_power(t, static_cast<int>(k));
    s.metrics[key] += mwh;
  }
  for (std::size_t z = 0; z < problem.zones.size(); ++z) {
    const std::string& id = problem.zones[z].id;
    double res = 0.0, lost = 0.0, dumped = 0.0, nex = 0.0;
    for (int t = 0; t < horizon; ++t) {
      res += result.res_dispatch(t, static_cast<int>(z));
      lost += result.lost_load(t, static_cast<int>(z));
      dumped += result.dumped(t, static_cast<int>(z));
      nex += result.net_export(t, static_cast<int>(z));
    }
    s.metrics["res." + id] = res;
    s.metrics["lost_load." + id] = lost;
    s.metrics["dumped." + id] = dumped;
    s.metrics["net_export." + id] = nex;
  }
  s.metrics["cost.total"] = result.generation_cost;
  return s;
}

}  // namespace wsynth
