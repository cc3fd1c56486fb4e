// Command line front end: fit, cluster, generate, dispatch, converge,
// diagnose. Data goes to files, logs go to stderr, and every subcommand is
// deterministic given its inputs and seeds.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <string>

#include "wsynth/cluster.hpp"
#include "wsynth/convergence.hpp"
#include "wsynth/diagnostics.hpp"
#include "wsynth/dispatch.hpp"
#include "wsynth/model_store.hpp"
#include "wsynth/pipeline.hpp"
#include "wsynth/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int thread_count(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SPECTRAL_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

// Optional JSON config; command line flags override its values.
json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return json::parse(in);
}

template <typename T>
void config_default(const json& cfg, const char* key, T& value, const CLI::Option* opt) {
  if (opt->count() == 0 && cfg.contains(key)) value = cfg.at(key).get<T>();
}

int cmd_fit(const std::string& panel_path, const std::string& meta_path,
            const std::string& out_dir, int max_ar_order) {
  const wsynth::WeatherPanel panel = wsynth::load_panel(panel_path, meta_path);
  wsynth::FitOptions options;
  options.max_ar_order = max_ar_order;
  const wsynth::SpectralModel model = wsynth::fit_model(panel, options);
  wsynth::save_model(model, out_dir);
  std::cerr << "fit: " << model.n_series() << " series, "
            << model.years_used.size() << " years -> " << out_dir << "\n";
  return 0;
}

int cmd_cluster(const std::string& panel_path, const std::string& meta_path,
                const std::string& out_path, int n_clusters, std::uint64_t seed) {
  const wsynth::WeatherPanel panel = wsynth::load_panel(panel_path, meta_path);

  // Distances are taken on gaussianized series so location-specific scale
  // does not dominate; clustering runs per parameter type.
  Eigen::MatrixXd gaussianized(panel.rows(), panel.cols());
  for (Eigen::Index p = 0; p < panel.cols(); ++p) {
    std::vector<double> col(panel.values.col(p).data(),
                            panel.values.col(p).data() + panel.rows());
    const auto cdf = wsynth::EmpiricalCdf::fit(col);
    const auto z = cdf.gaussianize(col);
    for (Eigen::Index t = 0; t < panel.rows(); ++t) {
      gaussianized(t, p) = z[static_cast<std::size_t>(t)];
    }
  }

  std::map<wsynth::Parameter, std::vector<int>> groups;
  for (std::size_t p = 0; p < panel.meta.size(); ++p) {
    groups[panel.meta[p].parameter].push_back(static_cast<int>(p));
  }

  json out;
  out["n_clusters_requested"] = n_clusters;
  out["seed"] = seed;
  json jgroups = json::array();
  for (const auto& [param, members] : groups) {
    Eigen::MatrixXd sub(panel.rows(), static_cast<Eigen::Index>(members.size()));
    for (std::size_t i = 0; i < members.size(); ++i) {
      sub.col(static_cast<Eigen::Index>(i)) = gaussianized.col(members[i]);
    }
    const int k = std::min<int>(n_clusters, static_cast<int>(members.size()));
    const wsynth::ClusterModel cm = wsynth::cluster_series(sub, k, seed);

    json jg;
    jg["parameter"] = wsynth::to_string(param);
    jg["n_clusters"] = k;
    jg["iterations"] = cm.iterations;
    jg["converged"] = cm.converged;
    json clusters = json::array();
    for (int c = 0; c < k; ++c) {
      json jc;
      jc["representative"] = panel.meta[static_cast<std::size_t>(
          members[static_cast<std::size_t>(cm.representatives[static_cast<std::size_t>(c)])])].id;
      json ids = json::array();
      std::vector<double> rmses;
      for (std::size_t s = 0; s < members.size(); ++s) {
        if (cm.assignment[s] == c) {
          ids.push_back(panel.meta[static_cast<std::size_t>(members[s])].id);
          rmses.push_back(cm.rmse_to_representative[s]);
        }
      }
      jc["members"] = std::move(ids);
      std::sort(rmses.begin(), rmses.end());
      json stats;
      stats["max"] = rmses.empty() ? 0.0 : rmses.back();
      stats["median"] = rmses.empty() ? 0.0 : rmses[rmses.size() / 2];
      stats["mean"] = rmses.empty() ? 0.0
              : std::accumulate(rmses.begin(), rmses.end(), 0.0) / rmses.size();
      jc["rmse"] = std::move(stats);
      clusters.push_back(std::move(jc));
    }
    jg["clusters"] = std::move(clusters);
    jgroups.push_back(std::move(jg));
  }
  out["groups"] = std::move(jgroups);

  std::ofstream f(out_path);
  if (!f) throw std::runtime_error("cannot write " + out_path);
  f << out.dump(2) << "\n";
  std::cerr << "cluster: wrote " << out_path << "\n";
  return 0;
}

int cmd_generate(const std::string& model_dir, const std::string& out_dir, int count,
                 std::uint64_t seed) {
  const wsynth::SpectralModel model = wsynth::load_model(model_dir);
  const auto files = wsynth::write_ensemble(model, seed, count, out_dir);
  std::cerr << "generate: wrote " << files.size() << " year file(s) to " << out_dir << "\n";
  return 0;
}

void write_dispatch_csv(const wsynth::DispatchProblem& problem,
                        const wsynth::DispatchResult& result, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot write " + path);
  std::fprintf(f, "hour,entity,variable,value\n");
  const int horizon = result.horizon();
  for (int t = 0; t < horizon; ++t) {
    for (std::size_t k = 0; k < problem.plants.size(); ++k) {
      std::fprintf(f, "%d,%s,power,%.10g\n", t, problem.plants[k].id.c_str(),
                   result.plant_power(t, static_cast<int>(k)));
    }
    for (std::size_t s = 0; s < problem.storages.size(); ++s) {
      const auto& id = problem.storages[s].id;
      std::fprintf(f, "%d,%s,charge,%.10g\n", t, id.c_str(),
                   result.storage_charge(t, static_cast<int>(s)));
      std::fprintf(f, "%d,%s,discharge,%.10g\n", t, id.c_str(),
                   result.storage_discharge(t, static_cast<int>(s)));
      std::fprintf(f, "%d,%s,energy,%.10g\n", t, id.c_str(),
                   result.storage_energy(t, static_cast<int>(s)));
    }
    for (std::size_t z = 0; z < problem.zones.size(); ++z) {
      const auto& id = problem.zones[z].id;
      std::fprintf(f, "%d,%s,res,%.10g\n", t, id.c_str(),
                   result.res_dispatch(t, static_cast<int>(z)));
      std::fprintf(f, "%d,%s,lost_load,%.10g\n", t, id.c_str(),
                   result.lost_load(t, static_cast<int>(z)));
      std::fprintf(f, "%d,%s,net_export,%.10g\n", t, id.c_str(),
                   result.net_export(t, static_cast<int>(z)));
      std::fprintf(f, "%d,%s,dumped,%.10g\n", t, id.c_str(),
                   result.dumped(t, static_cast<int>(z)));
    }
    for (std::size_t a = 0; a < problem.interconnectors.size(); ++a) {
      const auto& ic = problem.interconnectors[a];
      std::fprintf(f, "%d,%s->%s,flow,%.10g\n", t, ic.from.c_str(), ic.to.c_str(),
                   result.flow(t, static_cast<int>(a)));
    }
  }
  std::fclose(f);
}

int cmd_dispatch(const std::string& year_csv, const std::string& meta_path,
                 const std::string& problem_path, const std::string& out_dir) {
  const wsynth::WeatherPanel year = wsynth::load_panel(year_csv, meta_path);
  const wsynth::DispatchProblem problem = wsynth::load_dispatch_problem(problem_path);
  const int horizon = static_cast<int>(year.rows());
  const auto inputs = wsynth::build_hourly_inputs(problem, year.values, year.meta, horizon);
  const auto result = wsynth::solve_dispatch(problem, inputs, horizon);
  const auto summary = wsynth::summarize(problem, result);

  fs::create_directories(out_dir);
  write_dispatch_csv(problem, result, (fs::path(out_dir) / "dispatch.csv").string());
  json js;
  js["objective"] = summary.objective;
  js["max_balance_residual"] = result.max_balance_residual;
  for (const auto& [name, value] : summary.metrics) js["metrics"][name] = value;
  std::ofstream f(fs::path(out_dir) / "summary.json");
  f << js.dump(2) << "\n";
  std::cerr << "dispatch: objective " << result.objective << ", residual "
            << result.max_balance_residual << "\n";
  return 0;
}

int cmd_converge(const std::string& model_dir, const std::string& problem_path,
                 const std::string& out_dir, double rse, int min_years, int max_years,
                 std::uint64_t seed, int threads) {
  const wsynth::SpectralModel model = wsynth::load_model(model_dir);
  const wsynth::DispatchProblem problem = wsynth::load_dispatch_problem(problem_path);
  wsynth::ConvergenceOptions options;
  options.threshold = rse;
  options.min_years = min_years;
  options.max_years = max_years;
  options.master_seed = seed;
  options.threads = threads;
  const auto report = wsynth::run_until_converged(model, problem, options);

  fs::create_directories(out_dir);
  wsynth::write_convergence_report(report, (fs::path(out_dir) / "convergence_report.json").string());
  wsynth::write_year_records_csv(report, (fs::path(out_dir) / "year_summaries.csv").string());
  std::cerr << "converge: " << (report.converged ? "converged" : "NOT converged")
            << " after " << report.n_years << " years\n";
  return report.converged ? 0 : 3;
}

int cmd_diagnose(const std::string& panel_path, const std::string& meta_path,
                 const std::string& out_dir) {
  const wsynth::WeatherPanel panel = wsynth::load_panel(panel_path, meta_path);
  const wsynth::FitArtifacts artifacts = wsynth::fit_model_artifacts(panel);
  wsynth::write_diagnostics(artifacts, out_dir);
  std::cerr << "diagnose: wrote tables to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral weather-year synthesis and dispatch simulation"};
  app.require_subcommand(1);

  std::string config_path;
  int threads_flag = 0;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--threads", threads_flag, "Worker thread cap (or SPECTRAL_THREADS)");

  std::string panel_path, meta_path, model_dir, out_path, problem_path, year_csv;
  int count = 1, min_years = 30, max_years = 1000, n_clusters = 2, max_ar_order = 24;
  double rse = 0.01;
  std::uint64_t seed = 0;

  auto* fit = app.add_subcommand("fit", "Fit a spectral model from a weather panel");
  auto* fit_panel = fit->add_option("--panel", panel_path, "Input panel CSV")->required();
  auto* fit_meta = fit->add_option("--meta", meta_path, "Series metadata JSON")->required();
  auto* fit_out = fit->add_option("--out", out_path, "Output model directory")->required();
  fit->add_option("--max-ar-order", max_ar_order, "Night-fill AR order cap");

  auto* cluster = app.add_subcommand("cluster", "Cluster series per parameter type");
  cluster->add_option("--panel", panel_path, "Input panel CSV")->required();
  cluster->add_option("--meta", meta_path, "Series metadata JSON")->required();
  cluster->add_option("--out", out_path, "Output clusters.json")->required();
  cluster->add_option("--clusters", n_clusters, "Clusters per parameter group")->required();
  cluster->add_option("--seed", seed, "Random seed for the initial assignment");

  auto* generate = app.add_subcommand("generate", "Generate random weather years");
  generate->add_option("--model", model_dir, "Model directory")->required();
  generate->add_option("--out", out_path, "Output directory")->required();
  generate->add_option("--count", count, "Number of years")->required();
  generate->add_option("--seed", seed, "Master seed");

  auto* dispatch = app.add_subcommand("dispatch", "Economic dispatch of one weather year");
  dispatch->add_option("--year", year_csv, "Weather year CSV")->required();
  dispatch->add_option("--meta", meta_path, "Series metadata JSON")->required();
  dispatch->add_option("--problem", problem_path, "Dispatch problem JSON")->required();
  dispatch->add_option("--out", out_path, "Output directory")->required();

  auto* converge = app.add_subcommand("converge", "Generate and dispatch until metrics converge");
  converge->add_option("--model", model_dir, "Model directory")->required();
  converge->add_option("--problem", problem_path, "Dispatch problem JSON")->required();
  converge->add_option("--out", out_path, "Output directory")->required();
  auto* rse_opt = converge->add_option("--rse", rse, "Relative standard error threshold");
  auto* miny_opt = converge->add_option("--min-years", min_years, "Minimum ensemble size");
  auto* maxy_opt = converge->add_option("--max-years", max_years, "Maximum ensemble size");
  converge->add_option("--seed", seed, "Master seed");

  auto* diagnose = app.add_subcommand("diagnose", "Write spectral diagnostic tables");
  diagnose->add_option("--panel", panel_path, "Input panel CSV")->required();
  diagnose->add_option("--meta", meta_path, "Series metadata JSON")->required();
  diagnose->add_option("--out", out_path, "Output directory")->required();

  try {
    app.parse(argc, argv);
    const json cfg = load_config(config_path);
    config_default(cfg, "panel", panel_path, fit_panel);
    config_default(cfg, "meta", meta_path, fit_meta);
    config_default(cfg, "model_out", out_path, fit_out);
    config_default(cfg, "rse", rse, rse_opt);
    config_default(cfg, "min_years", min_years, miny_opt);
    config_default(cfg, "max_years", max_years, maxy_opt);
    const int threads = thread_count(threads_flag);

    if (fit->parsed()) return cmd_fit(panel_path, meta_path, out_path, max_ar_order);
    if (cluster->parsed()) return cmd_cluster(panel_path, meta_path, out_path, n_clusters, seed);
    if (generate->parsed()) return cmd_generate(model_dir, out_path, count, seed);
    if (dispatch->parsed()) return cmd_dispatch(year_csv, meta_path, problem_path, out_path);
    if (converge->parsed()) {
      return cmd_converge(model_dir, problem_path, out_path, rse, min_years, max_years,
                          seed, threads);
    }
    if (diagnose->parsed()) return cmd_diagnose(panel_path, meta_path, out_path);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
