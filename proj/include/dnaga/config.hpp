#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "channel.hpp"
#include "core.hpp"
#include "fading.hpp"
#include "macroscopic.hpp"
#include "scenario.hpp"
#include "simulator.hpp"

namespace dnaga {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScenarioType { Hex, Hotspot };

// Everything a run needs, mirrored 1:1 onto the INI sections of the shipped
// reference configs.
struct RunConfig {
  // [scenario]
  ScenarioType scenario_type = ScenarioType::Hex;
  int count = 228;
  double density_per_km2 = 55.43;  // hex
  double isd_km = 0.5;             // hotspot
  int n_sites = 19;
  int sectors_per_site = 3;
  int cells_per_sector = 4;
  double radius_km = 0.04;
  double min_inter_bs_km = 0.04;
  double min_bs_ue_km = 0.005;
  // [channel]
  ChannelParams channel;
  // [fading]
  FadingModel fading = FadingModel::rayleigh();
  // [ue]
  UeDistKind ue_dist = UeDistKind::Uniform;
  // [analysis]
  int m0 = 30;
  int sir_outer_order = 128;
  long n_samples = 100000;
  long fit_samples = 200000;
  int grid_points = 801;
  int victim = 0;
  // [simulation]
  long n_ue_drops = 1000;
  long n_channel_draws = 1000;
  // [macro]
  int n_deployments = 50;
  VictimPolicy victim_policy = VictimPolicy::AllCells;
  long macro_n_samples = 2000;
  long macro_fit_samples = 2000;
  double grid_lo_db = -60.0;
  double grid_hi_db = 60.0;
  long macro_sim_drops = 1000;
  long macro_sim_draws = 1000;
  // [seeds]
  std::uint64_t seed = 1;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct IniData {
  std::map<std::string, std::map<std::string, std::string>> sections;
};

inline IniData parse_ini(std::istream& in) {
  IniData data;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    data.sections[section][key] = value;
  }
  return data;
}

inline double to_double(const std::string& field, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(field + ": not a number: '" + v + "'");
  }
}

inline long to_long(const std::string& field, const std::string& v) {
  try {
    std::size_t pos = 0;
    long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(field + ": not an integer: '" + v + "'");
  }
}

inline std::uint64_t to_u64(const std::string& field, const std::string& v) {
  try {
    std::size_t pos = 0;
    unsigned long long d = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(field + ": not an unsigned integer: '" + v + "'");
  }
}

}  // namespace detail

inline void validate_config(const RunConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (cfg.count < 0) fail("scenario.count must be >= 0");
  if (cfg.scenario_type == ScenarioType::Hex && cfg.density_per_km2 <= 0.0)
    fail("scenario.density_per_km2 must be > 0");
  if (cfg.isd_km <= 0.0) fail("scenario.isd_km must be > 0");
  if (cfg.radius_km <= cfg.min_bs_ue_km) fail("scenario.radius_km must exceed scenario.min_bs_ue_km");
  if (cfg.min_bs_ue_km <= 0.0) fail("scenario.min_bs_ue_km must be > 0");
  if (cfg.min_inter_bs_km < 0.0) fail("scenario.min_inter_bs_km must be >= 0");
  if (cfg.channel.alpha <= 0.0) fail("channel.alpha must be > 0");
  if (cfg.channel.sigma_shadow_db < 0.0) fail("channel.sigma_shadow_db must be >= 0");
  if (!(cfg.channel.eta > 0.0 && cfg.channel.eta <= 1.0)) fail("channel.eta must be in (0, 1]");
  if (cfg.fading.kind == FadingKind::Nakagami && (cfg.fading.k <= 0.0 || cfg.fading.theta <= 0.0))
    fail("fading.k and fading.theta must be > 0");
  if (cfg.m0 < 1 || cfg.m0 > 512) fail("analysis.m0 must be in [1, 512]");
  if (cfg.sir_outer_order < 1 || cfg.sir_outer_order > 512) fail("analysis.sir_outer_order must be in [1, 512]");
  if (cfg.n_samples < 2) fail("analysis.n_samples must be >= 2");
  if (cfg.fit_samples < 16) fail("analysis.fit_samples must be >= 16");
  if (cfg.grid_points < 2) fail("analysis.grid_points must be >= 2");
  if (cfg.victim < 0 || (cfg.count > 0 && cfg.victim >= cfg.count)) fail("analysis.victim out of range");
  if (cfg.n_ue_drops < 1 || cfg.n_channel_draws < 1) fail("simulation counts must be >= 1");
  if (cfg.n_deployments < 1) fail("macro.n_deployments must be >= 1");
  if (cfg.grid_hi_db <= cfg.grid_lo_db) fail("macro.grid_hi_db must exceed macro.grid_lo_db");
}

inline RunConfig parse_config(std::istream& in) {
  detail::IniData ini = detail::parse_ini(in);
  RunConfig cfg;
  for (const auto& [section, keys] : ini.sections) {
    for (const auto& [key, value] : keys) {
      std::string field = section + "." + key;
      if (section == "scenario") {
        if (key == "type") {
          if (value == "hex") cfg.scenario_type = ScenarioType::Hex;
          else if (value == "hotspot") cfg.scenario_type = ScenarioType::Hotspot;
          else throw ConfigError("scenario.type must be 'hex' or 'hotspot'");
        } else if (key == "count") cfg.count = static_cast<int>(detail::to_long(field, value));
        else if (key == "density_per_km2") cfg.density_per_km2 = detail::to_double(field, value);
        else if (key == "isd_km") cfg.isd_km = detail::to_double(field, value);
        else if (key == "n_sites") cfg.n_sites = static_cast<int>(detail::to_long(field, value));
        else if (key == "sectors_per_site") cfg.sectors_per_site = static_cast<int>(detail::to_long(field, value));
        else if (key == "cells_per_sector") cfg.cells_per_sector = static_cast<int>(detail::to_long(field, value));
        else if (key == "radius_km") cfg.radius_km = detail::to_double(field, value);
        else if (key == "min_inter_bs_km") cfg.min_inter_bs_km = detail::to_double(field, value);
        else if (key == "min_bs_ue_km") cfg.min_bs_ue_km = detail::to_double(field, value);
        else throw ConfigError("unknown key: " + field);
      } else if (section == "channel") {
        if (key == "a_db") cfg.channel.a_db = detail::to_double(field, value);
        else if (key == "alpha") cfg.channel.alpha = detail::to_double(field, value);
        else if (key == "sigma_shadow_db") cfg.channel.sigma_shadow_db = detail::to_double(field, value);
        else if (key == "p0_dbm") cfg.channel.p0_dbm = detail::to_double(field, value);
        else if (key == "eta") cfg.channel.eta = detail::to_double(field, value);
        else throw ConfigError("unknown key: " + field);
      } else if (section == "fading") {
        if (key == "kind") {
          if (value == "rayleigh") cfg.fading.kind = FadingKind::Rayleigh;
          else if (value == "nakagami") cfg.fading.kind = FadingKind::Nakagami;
          else if (value == "constant") cfg.fading.kind = FadingKind::Constant;
          else throw ConfigError("fading.kind must be 'rayleigh', 'nakagami', or 'constant'");
        } else if (key == "k") cfg.fading.k = detail::to_double(field, value);
        else if (key == "theta") cfg.fading.theta = detail::to_double(field, value);
        else if (key == "value_db") cfg.fading.value_db = detail::to_double(field, value);
        else throw ConfigError("unknown key: " + field);
      } else if (section == "ue") {
        if (key == "distribution") {
          try {
            cfg.ue_dist = ue_dist_from_name(value);
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
        } else throw ConfigError("unknown key: " + field);
      } else if (section == "analysis") {
        if (key == "m0") cfg.m0 = static_cast<int>(detail::to_long(field, value));
        else if (key == "sir_outer_order") cfg.sir_outer_order = static_cast<int>(detail::to_long(field, value));
        else if (key == "n_samples") cfg.n_samples = detail::to_long(field, value);
        else if (key == "fit_samples") cfg.fit_samples = detail::to_long(field, value);
        else if (key == "grid_points") cfg.grid_points = static_cast<int>(detail::to_long(field, value));
        else if (key == "victim") cfg.victim = static_cast<int>(detail::to_long(field, value));
        else throw ConfigError("unknown key: " + field);
      } else if (section == "simulation") {
        if (key == "n_ue_drops") cfg.n_ue_drops = detail::to_long(field, value);
        else if (key == "n_channel_draws") cfg.n_channel_draws = detail::to_long(field, value);
        else throw ConfigError("unknown key: " + field);
      } else if (section == "macro") {
        if (key == "n_deployments") cfg.n_deployments = static_cast<int>(detail::to_long(field, value));
        else if (key == "victim_policy") {
          if (value == "all") cfg.victim_policy = VictimPolicy::AllCells;
          else if (value == "center") cfg.victim_policy = VictimPolicy::CenterCell;
          else throw ConfigError("macro.victim_policy must be 'all' or 'center'");
        } else if (key == "n_samples") cfg.macro_n_samples = detail::to_long(field, value);
        else if (key == "fit_samples") cfg.macro_fit_samples = detail::to_long(field, value);
        else if (key == "grid_lo_db") cfg.grid_lo_db = detail::to_double(field, value);
        else if (key == "grid_hi_db") cfg.grid_hi_db = detail::to_double(field, value);
        else if (key == "sim_drops") cfg.macro_sim_drops = detail::to_long(field, value);
        else if (key == "sim_draws") cfg.macro_sim_draws = detail::to_long(field, value);
        else throw ConfigError("unknown key: " + field);
      } else if (section == "seeds") {
        if (key == "master") cfg.seed = detail::to_u64(field, value);
        else throw ConfigError("unknown key: " + field);
      } else {
        throw ConfigError("unknown section: [" + section + "]");
      }
    }
  }
  validate_config(cfg);
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  return parse_config(in);
}

inline std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "[scenario]\n";
  out << "type = " << (cfg.scenario_type == ScenarioType::Hex ? "hex" : "hotspot") << "\n";
  out << "count = " << cfg.count << "\n";
  out << "density_per_km2 = " << cfg.density_per_km2 << "\n";
  out << "isd_km = " << cfg.isd_km << "\n";
  out << "n_sites = " << cfg.n_sites << "\n";
  out << "sectors_per_site = " << cfg.sectors_per_site << "\n";
  out << "cells_per_sector = " << cfg.cells_per_sector << "\n";
  out << "radius_km = " << cfg.radius_km << "\n";
  out << "min_inter_bs_km = " << cfg.min_inter_bs_km << "\n";
  out << "min_bs_ue_km = " << cfg.min_bs_ue_km << "\n";
  out << "\n[channel]\n";
  out << "a_db = " << cfg.channel.a_db << "\n";
  out << "alpha = " << cfg.channel.alpha << "\n";
  out << "sigma_shadow_db = " << cfg.channel.sigma_shadow_db << "\n";
  out << "p0_dbm = " << cfg.channel.p0_dbm << "\n";
  out << "eta = " << cfg.channel.eta << "\n";
  out << "\n[fading]\n";
  out << "kind = "
      << (cfg.fading.kind == FadingKind::Rayleigh
              ? "rayleigh"
              : cfg.fading.kind == FadingKind::Nakagami ? "nakagami" : "constant")
      << "\n";
  out << "k = " << cfg.fading.k << "\n";
  out << "theta = " << cfg.fading.theta << "\n";
  out << "value_db = " << cfg.fading.value_db << "\n";
  out << "\n[ue]\n";
  out << "distribution = " << ue_dist_name(cfg.ue_dist) << "\n";
  out << "\n[analysis]\n";
  out << "m0 = " << cfg.m0 << "\n";
  out << "sir_outer_order = " << cfg.sir_outer_order << "\n";
  out << "n_samples = " << cfg.n_samples << "\n";
  out << "fit_samples = " << cfg.fit_samples << "\n";
  out << "grid_points = " << cfg.grid_points << "\n";
  out << "victim = " << cfg.victim << "\n";
  out << "\n[simulation]\n";
  out << "n_ue_drops = " << cfg.n_ue_drops << "\n";
  out << "n_channel_draws = " << cfg.n_channel_draws << "\n";
  out << "\n[macro]\n";
  out << "n_deployments = " << cfg.n_deployments << "\n";
  out << "victim_policy = " << (cfg.victim_policy == VictimPolicy::AllCells ? "all" : "center") << "\n";
  out << "n_samples = " << cfg.macro_n_samples << "\n";
  out << "fit_samples = " << cfg.macro_fit_samples << "\n";
  out << "grid_lo_db = " << cfg.grid_lo_db << "\n";
  out << "grid_hi_db = " << cfg.grid_hi_db << "\n";
  out << "sim_drops = " << cfg.macro_sim_drops << "\n";
  out << "sim_draws = " << cfg.macro_sim_draws << "\n";
  out << "\n[seeds]\n";
  out << "master = " << cfg.seed << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Builders from a validated config
// ---------------------------------------------------------------------------

inline HotspotConfig make_hotspot_config(const RunConfig& cfg) {
  HotspotConfig h;
  h.isd_km = cfg.isd_km;
  h.n_sites = cfg.n_sites;
  h.sectors_per_site = cfg.sectors_per_site;
  h.cells_per_sector = cfg.cells_per_sector;
  h.min_inter_bs_km = cfg.min_inter_bs_km;
  h.radius_km = cfg.radius_km;
  h.min_bs_ue_km = cfg.min_bs_ue_km;
  h.ue_dist = cfg.ue_dist;
  return h;
}

inline Deployment make_deployment(const RunConfig& cfg) {
  if (cfg.scenario_type == ScenarioType::Hex)
    return generate_hex_lattice(cfg.density_per_km2, cfg.count, cfg.radius_km, cfg.min_bs_ue_km,
                                cfg.ue_dist);
  return generate_hotspot(make_hotspot_config(cfg), cfg.seed);
}

inline AnalysisOptions make_analysis_options(const RunConfig& cfg, int threads) {
  AnalysisOptions a;
  a.m0 = cfg.m0;
  a.sir_outer_order = cfg.sir_outer_order;
  a.n_samples = cfg.n_samples;
  a.fit_samples = cfg.fit_samples;
  a.grid_points = cfg.grid_points;
  a.seed = cfg.seed;
  a.threads = threads;
  return a;
}

inline SimConfig make_sim_config(const RunConfig& cfg, int threads) {
  SimConfig s;
  s.n_ue_drops = cfg.n_ue_drops;
  s.n_channel_draws = cfg.n_channel_draws;
  s.seed = derive_seed(cfg.seed, 0x51);
  s.victim = cfg.victim;
  s.threads = threads;
  return s;
}

inline MacroOptions make_macro_options(const RunConfig& cfg, int threads) {
  MacroOptions m;
  m.n_deployments = cfg.n_deployments;
  m.seed = cfg.seed;
  m.victim_policy = cfg.victim_policy;
  m.analysis = make_analysis_options(cfg, 1);
  m.analysis.n_samples = cfg.macro_n_samples;
  m.analysis.fit_samples = cfg.macro_fit_samples;
  m.grid_lo_db = cfg.grid_lo_db;
  m.grid_hi_db = cfg.grid_hi_db;
  m.grid_points = cfg.grid_points;
  m.threads = threads;
  return m;
}

}  // namespace dnaga
