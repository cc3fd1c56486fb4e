#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "wsynth/panel.hpp"

namespace wsynth {

// Piecewise power curve of a wind turbine fleet.
struct WindCurve {
  double cut_in = 3.0;     // m/s
  double rated = 12.0;     // m/s
  double cut_out = 25.0;   // m/s
};

// MW from hub-height wind speed: zero outside [cut_in, cut_out), rated
// capacity above rated speed, cubic interpolation in between.
double wind_to_power(double speed, double capacity_mw, const WindCurve& curve = {});

// MW from global irradiance, linear up to 1000 W/m^2.
double solar_to_power(double irradiance_w_m2, double capacity_mw, double performance_ratio);

struct HeatingLoad {
  double t_ref = 15.0;   // degC
  double slope = 0.0;    // MW per degC below t_ref
};

double temperature_to_load(double temperature_c, double base_load_mw, const HeatingLoad& heating);

struct Zone {
  std::string id;
  double base_load = 0.0;
  HeatingLoad heating;
  std::string temperature_series;     // weather series driving the load
  std::vector<double> demand;          // explicit MW per hour (optional)
  std::vector<double> res_availability; // explicit MW per hour (optional)
};

struct Plant {
  std::string id;
  std::string zone;
  std::string fuel;
  double capacity = 0.0;       // MW
  double marginal_cost = 0.0;  // currency/MWh
};

struct Storage {
  std::string id;
  std::string zone;
  double max_charge = 0.0;     // MW
  double max_discharge = 0.0;  // MW
  double energy_capacity = 0.0;  // MWh
  double efficiency = 1.0;       // two-way, in (0, 1]
  double initial_energy = 0.0;   // MWh
};

struct Interconnector {
  std::string from;
  std::string to;
  double ntc = 0.0;  // MW, directional
};

// Installed RES capacity attached to one weather series in one zone.
struct CapacityEntry {
  std::string zone;
  std::string technology;  // "wind" or "solar"
  std::string series;
  double capacity = 0.0;   // MW
};

struct DispatchProblem {
  std::vector<Zone> zones;
  std::vector<Plant> plants;
  std::vector<Storage> storages;
  std::vector<Interconnector> interconnectors;
  std::vector<CapacityEntry> capacity_map;
  WindCurve wind_curve;
  double solar_performance_ratio = 0.9;
  double voll = 3000.0;  // currency/MWh on unserved demand
  int block_hours = 168; // LP decomposition block; 0 = single LP

  int zone_index(const std::string& id) const;
  void validate() const;  // throws on inconsistent ids or bad parameters
};

DispatchProblem load_dispatch_problem(const std::string& json_path);
DispatchProblem parse_dispatch_problem(const std::string& json_text);

// Fill per-zone demand and RES availability over `horizon` hours from a
// weather panel (generated or historical). Explicit arrays in the problem
// take precedence; otherwise demand couples to the temperature series and
// availability sums converted wind/solar feed-in over the capacity map.
struct HourlyInputs {
  Eigen::MatrixXd demand;        // horizon x zones
  Eigen::MatrixXd availability;  // horizon x zones
};
HourlyInputs build_hourly_inputs(const DispatchProblem& problem,
                                 const Eigen::MatrixXd& weather,
                                 const std::vector<SeriesMeta>& meta, int horizon);

struct DispatchResult {
  // horizon x entity matrices, entity order matching the problem vectors.
  Eigen::MatrixXd plant_power;        // P_{k,t}
  Eigen::MatrixXd storage_charge;     // MW into the storage (grid side)
  Eigen::MatrixXd storage_discharge;  // MW out of the storage (grid side)
  Eigen::MatrixXd storage_energy;     // MWh state at end of hour
  Eigen::MatrixXd res_dispatch;       // P^RES per zone
  Eigen::MatrixXd lost_load;          // unserved demand per zone
  Eigen::MatrixXd flow;               // per interconnector
  Eigen::MatrixXd net_export;         // per zone
  Eigen::MatrixXd dumped;             // availability - dispatched RES
  double objective = 0.0;             // includes VOLL penalty
  double generation_cost = 0.0;       // plant cost only
  double max_balance_residual = 0.0;
  int lp_iterations = 0;

  int horizon() const { return static_cast<int>(plant_power.rows()); }
};

// Solve the economic dispatch over `horizon` hours. Blocks of
// problem.block_hours are solved in sequence with the storage state chained
// between them; block_hours <= 0 solves one LP for the whole horizon.
DispatchResult solve_dispatch(const DispatchProblem& problem, const HourlyInputs& inputs,
                              int horizon);

// Per-fuel-per-zone annual generation and related scalars; the convergence
// metrics are derived from this.
struct DispatchSummary {
  std::map<std::string, double> metrics;  // name -> value (MWh or currency)
  double objective = 0.0;
};
DispatchSummary summarize(const DispatchProblem& problem, const DispatchResult& result);

}  // namespace wsynth
