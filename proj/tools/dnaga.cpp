// Command-line front end: generate deployments, run the analytic pipeline,
// run the Monte Carlo simulator, compare curves, and run the large-scale
// averaging modes. All outputs are CSV; all runs are deterministic given
// (config, seed).
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <dnaga/dnaga.hpp>

namespace fs = std::filesystem;
using namespace dnaga;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitGeneration = 3;
constexpr int kExitNumerical = 4;

struct CommonArgs {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  int threads = 0;  // 0: use available parallelism
  std::optional<int> grid_points;
};

RunConfig load(const CommonArgs& args) {
  RunConfig cfg = load_config(args.config_path);
  if (args.seed) cfg.seed = *args.seed;
  if (args.grid_points) {
    if (*args.grid_points < 2) throw ConfigError("--grid-points must be >= 2");
    cfg.grid_points = *args.grid_points;
  }
  validate_config(cfg);
  return cfg;
}

void write_deployment_csv(const Deployment& dep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "id,x_km,y_km,radius_km,ue_dist_kind\n";
  for (const auto& c : dep.cells)
    out << c.id << ',' << format_sig15(c.bs.x) << ',' << format_sig15(c.bs.y) << ','
        << format_sig15(c.radius_km) << ',' << ue_dist_name(c.ue_dist) << '\n';
}

void write_parameters_csv(const AnalysisResult& res, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "name,value\n";
  out << "mu_g1_db," << format_sig15(res.g1.mean) << '\n';
  out << "var_g1_db2," << format_sig15(res.g1.var) << '\n';
  out << "lambda," << format_sig15(res.pl.lambda) << '\n';
  out << "mu_q_db," << format_sig15(res.pl.mu_q) << '\n';
  out << "var_q_db2," << format_sig15(res.pl.sigma_q * res.pl.sigma_q) << '\n';
  for (std::size_t i = 0; i < res.cells.size(); ++i) {
    int id = res.interferer_ids[i];
    out << "mu_q_cell_" << id << "_db," << format_sig15(res.cells[i].mean) << '\n';
    out << "var_q_cell_" << id << "_db2," << format_sig15(res.cells[i].var) << '\n';
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
}

int cmd_generate(const CommonArgs& args) {
  RunConfig cfg = load(args);
  Deployment dep = make_deployment(cfg);
  write_deployment_csv(dep, args.out);
  std::cout << "wrote " << dep.count() << " cells to " << args.out << "\n";
  return 0;
}

int cmd_analyze(const CommonArgs& args) {
  RunConfig cfg = load(args);
  ensure_dir(args.out);
  Deployment dep = make_deployment(cfg);
  AnalysisOptions opt = make_analysis_options(cfg, resolve_threads(args.threads));
  AnalysisResult res = analyze_cell(dep, cfg.victim, cfg.channel, cfg.fading, opt);
  write_cdf_csv(res.signal, args.out + "/signal_cdf.csv");
  write_cdf_csv(res.interference, args.out + "/interference_cdf.csv");
  write_cdf_csv(res.sir, args.out + "/sir_cdf.csv");
  write_parameters_csv(res, args.out + "/parameters.csv");
  std::cout << "victim " << cfg.victim << ": mu_g1 = " << format_sig15(res.g1.mean)
            << " dB, var_g1 = " << format_sig15(res.g1.var) << " dB^2, lambda = "
            << format_sig15(res.pl.lambda) << ", mu_q = " << format_sig15(res.pl.mu_q)
            << " dB, var_q = " << format_sig15(res.pl.sigma_q * res.pl.sigma_q) << " dB^2\n";
  return 0;
}

int cmd_simulate(const CommonArgs& args) {
  RunConfig cfg = load(args);
  ensure_dir(args.out);
  Deployment dep = make_deployment(cfg);
  SimConfig sim = make_sim_config(cfg, resolve_threads(args.threads));
  write_empirical_cdf_csv(simulate_sir(dep, sim.victim, cfg.channel, cfg.fading, sim),
                          args.out + "/sir_empirical_cdf.csv");
  write_empirical_cdf_csv(simulate_interference_db(dep, sim.victim, cfg.channel, cfg.fading, sim),
                          args.out + "/interference_empirical_cdf.csv");
  write_empirical_cdf_csv(simulate_signal_db(dep, sim.victim, cfg.channel, cfg.fading, sim),
                          args.out + "/signal_empirical_cdf.csv");
  std::cout << "simulated " << sim.n_ue_drops << " x " << sim.n_channel_draws
            << " samples into " << args.out << "\n";
  return 0;
}

int cmd_compare(const std::string& analytic_path, const std::string& empirical_path,
                const std::string& out_path) {
  CdfCurve analytic = read_cdf_csv(analytic_path);
  if (!analytic.valid()) throw IoError(analytic_path + ": not a valid CDF curve");
  CdfCurve emp_curve = read_cdf_csv(empirical_path);
  EmpiricalCdf emp(emp_curve.grid);  // empirical CSV rows are the sorted samples

  double ks;
  bool disjoint = emp.samples.back() < analytic.grid.front() ||
                  emp.samples.front() > analytic.grid.back();
  if (disjoint) {
    std::cerr << "warning: curve supports are disjoint; reporting KS = 1.0\n";
    ks = 1.0;
  } else {
    ks = ks_distance(emp, analytic);
  }
  // largest CDF gap at the 1st..99th empirical percentile abscissas, in
  // percentile units
  double max_pct_dev = 0.0;
  for (int p = 1; p <= 99; ++p) {
    double x = emp.quantile(p / 100.0);
    max_pct_dev = std::max(max_pct_dev, 100.0 * std::fabs(analytic.eval(x) - p / 100.0));
  }
  std::cout << "ks_distance " << format_sig15(ks) << "\n";
  std::cout << "max_percentile_deviation " << format_sig15(max_pct_dev) << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot write " + out_path);
    out << "metric,value\n";
    out << "ks_distance," << format_sig15(ks) << '\n';
    out << "max_percentile_deviation," << format_sig15(max_pct_dev) << '\n';
  }
  return 0;
}

int cmd_macro(const CommonArgs& args, const std::string& mode) {
  RunConfig cfg = load(args);
  ensure_dir(args.out);
  if (mode == "hex") {
    AnalysisOptions opt = make_analysis_options(cfg, resolve_threads(args.threads));
    HexBoundResult hb = analytical_hex_bound(cfg.density_per_km2, cfg.count, cfg.radius_km,
                                             cfg.min_bs_ue_km, cfg.ue_dist, cfg.channel,
                                             cfg.fading, opt);
    write_cdf_csv(hb.analysis.signal, args.out + "/signal_cdf.csv");
    write_cdf_csv(hb.analysis.interference, args.out + "/interference_cdf.csv");
    write_cdf_csv(hb.analysis.sir, args.out + "/sir_cdf.csv");
    write_parameters_csv(hb.analysis, args.out + "/parameters.csv");
    std::ofstream out(args.out + "/summary.csv");
    if (!out) throw IoError("cannot write " + args.out + "/summary.csv");
    out << "metric,value\n";
    out << "median_sir_db," << format_sig15(hb.macro.median_sir_db) << '\n';
    out << "density_per_km2," << format_sig15(hb.density_per_km2) << '\n';
    std::cout << "hex bound median SIR " << format_sig15(hb.macro.median_sir_db) << " dB\n";
    return 0;
  }
  if (mode != "semi") throw ConfigError("--mode must be 'semi' or 'hex'");
  MacroOptions opt = make_macro_options(cfg, resolve_threads(args.threads));
  HotspotConfig hotspot = make_hotspot_config(cfg);
  MacroResult res = semi_analytical(hotspot, cfg.channel, cfg.fading, opt);
  if (cfg.macro_sim_drops > 0 && cfg.macro_sim_draws > 0) {
    EmpiricalCdf ref = macro_validation_sim(hotspot, cfg.channel, cfg.fading, opt,
                                            cfg.macro_sim_drops, cfg.macro_sim_draws);
    attach_validation(res, ref);
    write_empirical_cdf_csv(ref, args.out + "/sir_empirical_cdf.csv");
  }
  write_cdf_csv(res.mean_cdf, args.out + "/mean_sir_cdf.csv");
  std::ofstream out(args.out + "/summary.csv");
  if (!out) throw IoError("cannot write " + args.out + "/summary.csv");
  out << "metric,value\n";
  out << "n_deployments," << res.n_deployments << '\n';
  out << "median_sir_db," << format_sig15(res.median_sir_db) << '\n';
  out << "max_dev," << format_sig15(res.max_dev) << '\n';
  out << "mean_dev," << format_sig15(res.mean_dev) << '\n';
  std::cout << "averaged " << res.n_deployments << " deployments: median SIR "
            << format_sig15(res.median_sir_db) << " dB, max deviation "
            << format_sig15(res.max_dev) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic uplink interference/signal/SIR CDFs for small-cell deployments, "
               "with a seeded Monte Carlo validator"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string mode = "semi";
  std::string analytic_path, empirical_path, summary_path;

  auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--config", args.config_path, "run configuration file (INI)")->required();
    if (needs_out) sub->add_option("--out", args.out, "output path")->required();
    sub->add_option("--seed", args.seed, "override [seeds] master");
    sub->add_option("--threads", args.threads, "worker threads (0 = all available)");
    sub->add_option("--grid-points", args.grid_points, "CDF tabulation grid size");
  };

  CLI::App* generate = app.add_subcommand("generate", "write the deployment CSV for a config");
  add_common(generate, true);
  CLI::App* analyze = app.add_subcommand("analyze", "run the analytic pipeline for one victim cell");
  add_common(analyze, true);
  CLI::App* simulate = app.add_subcommand("simulate", "run the Monte Carlo simulator");
  add_common(simulate, true);
  CLI::App* macro = app.add_subcommand("macro", "deployment-ensemble averaging / lattice bound");
  add_common(macro, true);
  macro->add_option("--mode", mode, "semi | hex")->check(CLI::IsMember({"semi", "hex"}));

  CLI::App* compare = app.add_subcommand("compare", "KS distance between an analytic and an empirical CDF CSV");
  compare->add_option("analytic", analytic_path, "analytic CdfCurve CSV")->required();
  compare->add_option("empirical", empirical_path, "empirical CDF CSV (sorted samples)")->required();
  compare->add_option("--out", summary_path, "summary CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(args);
    if (analyze->parsed()) return cmd_analyze(args);
    if (simulate->parsed()) return cmd_simulate(args);
    if (macro->parsed()) return cmd_macro(args, mode);
    if (compare->parsed()) return cmd_compare(analytic_path, empirical_path, summary_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GenerationError& e) {
    std::cerr << "generation error: " << e.what() << "\n";
    return kExitGeneration;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
