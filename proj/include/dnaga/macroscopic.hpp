#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cdf.hpp"
#include "core.hpp"
#include "parallel.hpp"
#include "scenario.hpp"
#include "simulator.hpp"

namespace dnaga {

enum class VictimPolicy { AllCells, CenterCell };

struct MacroOptions {
  int n_deployments = 50;
  std::uint64_t seed = 1;
  VictimPolicy victim_policy = VictimPolicy::AllCells;
  AnalysisOptions analysis;        // per-victim analysis settings (macro scale)
  double grid_lo_db = -60.0;       // common SIR grid for averaging
  double grid_hi_db = 60.0;
  int grid_points = 801;
  int threads = 1;
  bool keep_per_deployment = false;
};

struct MacroResult {
  CdfCurve mean_cdf;
  std::vector<CdfCurve> per_deployment_cdfs;  // optional
  int n_deployments = 0;
  double max_dev = 0.0;   // vs a validation reference, when one is supplied
  double mean_dev = 0.0;
  double median_sir_db = 0.0;
};

inline double cdf_quantile(const CdfCurve& c, double p) {
  for (std::size_t i = 1; i < c.grid.size(); ++i) {
    if (c.probs[i] >= p) {
      double span = c.probs[i] - c.probs[i - 1];
      double t = span > 0.0 ? (p - c.probs[i - 1]) / span : 1.0;
      return c.grid[i - 1] + t * (c.grid[i] - c.grid[i - 1]);
    }
  }
  return c.grid.back();
}

namespace detail {

inline constexpr std::uint64_t kTagMacroDeployment = 0xd0;
inline constexpr std::uint64_t kTagMacroAnalysis = 0xd1;
inline constexpr std::uint64_t kTagMacroSim = 0xd2;

inline int center_cell(const Deployment& dep) {
  double cx = 0.0, cy = 0.0;
  for (const auto& c : dep.cells) {
    cx += c.bs.x;
    cy += c.bs.y;
  }
  cx /= dep.count();
  cy /= dep.count();
  int best = 0;
  double best_d = 1e300;
  for (int i = 0; i < dep.count(); ++i) {
    double d = std::hypot(dep.cells[i].bs.x - cx, dep.cells[i].bs.y - cy);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

// Deployment-ensemble average of the per-victim analytic SIR CDFs: generates
// n sub-seeded random deployments, analyzes each victim under the policy,
// and averages all curves pointwise on one fixed grid.
inline MacroResult semi_analytical(const HotspotConfig& hotspot, const ChannelParams& prm,
                                   const FadingModel& fading, const MacroOptions& opt) {
  if (opt.n_deployments < 1) throw std::invalid_argument("semi_analytical: n_deployments must be >= 1");
  std::vector<double> grid = linspace(opt.grid_lo_db, opt.grid_hi_db, opt.grid_points);
  std::vector<std::vector<double>> dep_sums(opt.n_deployments);
  std::vector<long> dep_counts(opt.n_deployments, 0);

  parallel_for(opt.n_deployments, opt.threads, [&](long d) {
    Deployment dep = generate_hotspot(
        hotspot, derive_seed(opt.seed, detail::kTagMacroDeployment, static_cast<std::uint64_t>(d)));
    std::vector<int> victims;
    if (opt.victim_policy == VictimPolicy::CenterCell) {
      victims.push_back(detail::center_cell(dep));
    } else {
      for (int v = 0; v < dep.count(); ++v) victims.push_back(v);
    }
    std::vector<double> sum(grid.size(), 0.0);
    for (int v : victims) {
      AnalysisOptions a = opt.analysis;
      a.seed = derive_seed(opt.seed, detail::kTagMacroAnalysis, static_cast<std::uint64_t>(d), v);
      a.threads = 1;  // outer loop owns the parallelism
      a.sir_grid = grid;
      AnalysisResult res = analyze_cell(dep, v, prm, fading, a);
      for (std::size_t i = 0; i < grid.size(); ++i) sum[i] += res.sir.probs[i];
    }
    dep_sums[d] = std::move(sum);
    dep_counts[d] = static_cast<long>(victims.size());
  });

  MacroResult out;
  out.n_deployments = opt.n_deployments;
  out.mean_cdf.grid = grid;
  out.mean_cdf.probs.assign(grid.size(), 0.0);
  long total = 0;
  for (int d = 0; d < opt.n_deployments; ++d) {
    total += dep_counts[d];
    for (std::size_t i = 0; i < grid.size(); ++i) out.mean_cdf.probs[i] += dep_sums[d][i];
    if (opt.keep_per_deployment) {
      CdfCurve c;
      c.grid = grid;
      c.probs = dep_sums[d];
      for (auto& p : c.probs) p /= static_cast<double>(dep_counts[d]);
      out.per_deployment_cdfs.push_back(std::move(c));
    }
  }
  for (auto& p : out.mean_cdf.probs) p /= static_cast<double>(total);
  out.median_sir_db = cdf_quantile(out.mean_cdf, 0.5);
  return out;
}

// Pooled validation simulation over the same deployment ensemble, honoring
// the victim policy: center-cell runs fix the victim, all-cell runs rotate
// it across drops so every cell is counted.
inline EmpiricalCdf macro_validation_sim(const HotspotConfig& hotspot, const ChannelParams& prm,
                                         const FadingModel& fading, const MacroOptions& opt,
                                         long n_ue_drops, long n_channel_draws) {
  std::vector<std::vector<double>> slots(opt.n_deployments);
  parallel_for(opt.n_deployments, opt.threads, [&](long d) {
    Deployment dep = generate_hotspot(
        hotspot, derive_seed(opt.seed, detail::kTagMacroDeployment, static_cast<std::uint64_t>(d)));
    SimConfig cfg;
    cfg.n_ue_drops = n_ue_drops;
    cfg.n_channel_draws = n_channel_draws;
    cfg.seed = derive_seed(opt.seed, detail::kTagMacroSim, static_cast<std::uint64_t>(d));
    cfg.threads = 1;
    int victim = opt.victim_policy == VictimPolicy::CenterCell ? detail::center_cell(dep) : -1;
    slots[d] = simulate_sir(dep, victim, prm, fading, cfg).samples;
  });
  std::vector<double> all;
  for (auto& s : slots) all.insert(all.end(), s.begin(), s.end());
  return EmpiricalCdf(std::move(all));
}

// Fills in the deviation statistics of a macro result against a pooled
// empirical reference, restricted to the grid span the sample covers.
inline void attach_validation(MacroResult& res, const EmpiricalCdf& emp) {
  if (emp.size() == 0) throw std::invalid_argument("attach_validation: empty reference");
  double max_dev = 0.0, sum_dev = 0.0;
  long n = 0;
  for (std::size_t i = 0; i < res.mean_cdf.grid.size(); ++i) {
    double x = res.mean_cdf.grid[i];
    if (x < emp.samples.front() || x > emp.samples.back()) continue;
    double dev = std::fabs(res.mean_cdf.probs[i] - emp.eval(x));
    max_dev = std::max(max_dev, dev);
    sum_dev += dev;
    ++n;
  }
  res.max_dev = max_dev;
  res.mean_dev = n ? sum_dev / static_cast<double>(n) : 0.0;
}

struct HexBoundResult {
  AnalysisResult analysis;
  MacroResult macro;
  double density_per_km2 = 0.0;
};

// Idealistic hex-lattice deployment at the equivalent BS density; one
// analysis of the centroid cell upper-bounds the random-deployment SIR.
inline HexBoundResult analytical_hex_bound(double density_per_km2, int count, double radius_km,
                                           double min_bs_ue_km, UeDistKind ue_dist,
                                           const ChannelParams& prm, const FadingModel& fading,
                                           const AnalysisOptions& analysis) {
  if (density_per_km2 <= 0.0) throw std::invalid_argument("analytical_hex_bound: density must be > 0");
  Deployment dep = generate_hex_lattice(density_per_km2, count, radius_km, min_bs_ue_km, ue_dist);
  HexBoundResult out;
  out.density_per_km2 = density_per_km2;
  out.analysis = analyze_cell(dep, 0, prm, fading, analysis);
  out.macro.n_deployments = 1;
  out.macro.mean_cdf = out.analysis.sir;
  out.macro.median_sir_db = cdf_quantile(out.analysis.sir, 0.5);
  return out;
}

}  // namespace dnaga
