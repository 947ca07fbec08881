#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rng.hpp"

namespace dnaga {

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double dist(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

enum class UeDistKind { Uniform, InverseRadial };

struct Cell {
  int id = 0;
  Point bs;
  double radius_km = 0.04;
  UeDistKind ue_dist = UeDistKind::Uniform;
};

struct Deployment {
  std::vector<Cell> cells;
  double min_bs_ue_km = 0.005;
  double min_inter_bs_km = 0.04;
  std::uint64_t seed = 0;  // 0 for deterministic lattices
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  // cells whose coverage disk can overlap cell b's disk (region competitors)
  std::vector<std::vector<int>> overlaps;

  int count() const { return static_cast<int>(cells.size()); }

  void finalize() {
    int n = count();
    overlaps.assign(n, {});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        if (dist(cells[i].bs, cells[j].bs) < cells[i].radius_km + cells[j].radius_km)
          overlaps[i].push_back(j);
      }
      xmin = std::min(xmin, cells[i].bs.x - cells[i].radius_km);
      xmax = std::max(xmax, cells[i].bs.x + cells[i].radius_km);
      ymin = std::min(ymin, cells[i].bs.y - cells[i].radius_km);
      ymax = std::max(ymax, cells[i].bs.y + cells[i].radius_km);
    }
  }
};

struct HotspotConfig {
  double isd_km = 0.5;
  int n_sites = 19;          // two-ring hex layout
  int sectors_per_site = 3;  // rhombic sectors per hexagon
  int cells_per_sector = 4;
  double min_inter_bs_km = 0.04;
  double radius_km = 0.04;
  double min_bs_ue_km = 0.005;
  UeDistKind ue_dist = UeDistKind::Uniform;
  int retry_budget = 10000;
};

// 19 macro sites on the standard two-ring hexagonal layout: axial
// coordinates (i, j) with |i|,|j|,|i+j| <= 2.
inline std::vector<Point> two_ring_hex_sites(double isd, int n_sites) {
  std::vector<Point> sites;
  for (int ring = 0; ring <= 2; ++ring)
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) {
        int r = std::max({std::abs(i), std::abs(j), std::abs(i + j)});
        if (r != ring) continue;
        sites.push_back({isd * (i + 0.5 * j), isd * 0.8660254037844386467637232 * j});
      }
  if (static_cast<int>(sites.size()) < n_sites)
    throw GenerationError("hotspot: site layout supports at most 19 sites");
  sites.resize(n_sites);
  return sites;
}

// Each hexagonal site area is split into 3 rhombi spanned by alternating
// corner vectors; small-cell BSs drop uniformly inside a rhombus subject to
// the global min inter-BS distance.
inline Deployment generate_hotspot(const HotspotConfig& cfg, std::uint64_t seed) {
  if (cfg.radius_km <= cfg.min_bs_ue_km || cfg.min_bs_ue_km <= 0.0)
    throw std::invalid_argument("hotspot: need radius_km > min_bs_ue_km > 0");
  Deployment dep;
  dep.seed = seed;
  dep.min_bs_ue_km = cfg.min_bs_ue_km;
  dep.min_inter_bs_km = cfg.min_inter_bs_km;
  auto sites = two_ring_hex_sites(cfg.isd_km, cfg.n_sites);
  double hex_r = cfg.isd_km / 1.732050807568877293527446;  // corner distance
  int id = 0;
  for (int s = 0; s < static_cast<int>(sites.size()); ++s) {
    Rng rng(derive_seed(seed, 0x5c, s));
    for (int sec = 0; sec < cfg.sectors_per_site; ++sec) {
      double a1 = 0.5235987755982988730771072 + 2.0943951023931954923084289 * sec;  // 30 + 120*sec deg
      double a2 = a1 + 2.0943951023931954923084289;
      Point e1{hex_r * std::cos(a1), hex_r * std::sin(a1)};
      Point e2{hex_r * std::cos(a2), hex_r * std::sin(a2)};
      for (int c = 0; c < cfg.cells_per_sector; ++c) {
        bool placed = false;
        for (int attempt = 0; attempt < cfg.retry_budget; ++attempt) {
          double u = rng.uniform(), v = rng.uniform();
          Point p{sites[s].x + u * e1.x + v * e2.x, sites[s].y + u * e1.y + v * e2.y};
          bool ok = true;
          for (const auto& cell : dep.cells)
            if (dist(cell.bs, p) < cfg.min_inter_bs_km) { ok = false; break; }
          if (!ok) continue;
          dep.cells.push_back({id++, p, cfg.radius_km, cfg.ue_dist});
          placed = true;
          break;
        }
        if (!placed)
          throw GenerationError("hotspot: min-distance constraint unsatisfiable in macrocell site " + std::to_string(s));
      }
    }
  }
  dep.finalize();
  return dep;
}

// Triangular lattice with point density density_per_km2; returns the `count`
// points nearest the origin (the tagged centroid cell gets index 0).
inline Deployment generate_hex_lattice(double density_per_km2, int count, double radius_km = 0.04,
                                       double min_bs_ue_km = 0.005,
                                       UeDistKind ue_dist = UeDistKind::Uniform) {
  if (density_per_km2 <= 0.0 || count <= 0) throw std::invalid_argument("hex lattice: density and count must be > 0");
  if (radius_km <= min_bs_ue_km || min_bs_ue_km <= 0.0)
    throw std::invalid_argument("hex lattice: need radius_km > min_bs_ue_km > 0");
  double d = std::sqrt(2.0 / (1.732050807568877293527446 * density_per_km2));
  int span = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))) + 3;
  struct Cand { Point p; double r; };
  std::vector<Cand> cand;
  for (int i = -span; i <= span; ++i)
    for (int j = -span; j <= span; ++j) {
      Point p{d * (i + 0.5 * j), d * 0.8660254037844386467637232 * j};
      cand.push_back({p, std::hypot(p.x, p.y)});
    }
  std::stable_sort(cand.begin(), cand.end(), [](const Cand& a, const Cand& b) { return a.r < b.r; });
  if (static_cast<int>(cand.size()) < count) throw GenerationError("hex lattice: internal span too small");
  Deployment dep;
  dep.min_bs_ue_km = min_bs_ue_km;
  dep.min_inter_bs_km = d;
  for (int i = 0; i < count; ++i) dep.cells.push_back({i, cand[i].p, radius_km, ue_dist});
  dep.finalize();
  return dep;
}

// R_b: annulus [min_bs_ue, radius] around BS b, clipped to "b is the nearest
// BS among those whose coverage disk contains the point"; ties go to the
// lower cell index.
inline bool region_contains(const Deployment& dep, int cell_id, const Point& p) {
  if (cell_id < 0 || cell_id >= dep.count()) throw std::out_of_range("region_contains: bad cell id");
  const Cell& own = dep.cells[cell_id];
  double dow = dist(own.bs, p);
  if (dow < dep.min_bs_ue_km || dow > own.radius_km) return false;
  for (int j : dep.overlaps[cell_id]) {
    const Cell& other = dep.cells[j];
    double dj = dist(other.bs, p);
    if (dj <= other.radius_km && (dj < dow || (dj == dow && j < cell_id))) return false;
  }
  return true;
}

// Radial draw on [r1, r2]: Uniform-in-area or density ~ 1/rho (which makes
// the radius itself uniform).
inline double sample_radius(UeDistKind kind, double r1, double r2, Rng& rng) {
  if (kind == UeDistKind::Uniform) {
    double u = rng.uniform();
    return std::sqrt(r1 * r1 + u * (r2 * r2 - r1 * r1));
  }
  return rng.uniform(r1, r2);
}

inline Point sample_ue(const Deployment& dep, int cell_id, Rng& rng, int retry_budget = 10000) {
  const Cell& cell = dep.cells[cell_id];
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    double rho = sample_radius(cell.ue_dist, dep.min_bs_ue_km, cell.radius_km, rng);
    double phi = rng.uniform(0.0, 6.283185307179586476925287);
    Point p{cell.bs.x + rho * std::cos(phi), cell.bs.y + rho * std::sin(phi)};
    if (dep.overlaps[cell_id].empty()) return p;  // annulus draw already valid
    if (region_contains(dep, cell_id, p)) return p;
  }
  throw GenerationError("sample_ue: region of cell " + std::to_string(cell_id) + " empty after retry budget");
}

inline const char* ue_dist_name(UeDistKind k) {
  return k == UeDistKind::Uniform ? "uniform" : "inverse_radial";
}

inline UeDistKind ue_dist_from_name(const std::string& s) {
  if (s == "uniform") return UeDistKind::Uniform;
  if (s == "inverse_radial") return UeDistKind::InverseRadial;
  throw std::invalid_argument("unknown ue distribution: " + s);
}

}  // namespace dnaga
