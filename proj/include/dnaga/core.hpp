#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cdf.hpp"
#include "channel.hpp"
#include "fading.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "scenario.hpp"
#include "simulator.hpp"
#include "special.hpp"

namespace dnaga {

struct RegionMoments {
  double mu_l = 0.0;      // dB
  double var_l = 0.0;     // dB^2
  double std_error = 0.0; // sample SE of the mean, dB
};

struct GaussianApprox {
  double mean = 0.0;  // dB
  double var = 0.0;   // dB^2
};

// CDF Phi^lambda((q - mu_q)/sigma_q)
struct PowerLognormal {
  double lambda = 1.0;
  double mu_q = 0.0;    // dB
  double sigma_q = 1.0; // dB (STD)
};

// ---------------------------------------------------------------------------
// Region moment integration (seeded Monte Carlo over the region predicate)
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
RegionMoments region_moments_mc(const Deployment& dep, int cell, long n_samples,
                                std::uint64_t seed, F&& value_of_point) {
  if (n_samples < 2) throw std::invalid_argument("region moments: need n_samples >= 2");
  Rng rng(seed);
  double sum = 0.0, sumsq = 0.0;
  for (long i = 0; i < n_samples; ++i) {
    Point p = sample_ue(dep, cell, rng);
    double v = value_of_point(p);
    sum += v;
    sumsq += v * v;
  }
  double n = static_cast<double>(n_samples);
  RegionMoments rm;
  rm.mu_l = sum / n;
  rm.var_l = std::max(0.0, sumsq / n - rm.mu_l * rm.mu_l);
  rm.std_error = std::sqrt(rm.var_l / n);
  return rm;
}

}  // namespace detail

// Moments of L = eta*L_bb - L_b1 for a UE in the interferer's region.
inline RegionMoments interference_path_moments(const Deployment& dep, int victim, int interferer,
                                               const ChannelParams& prm, long n_samples,
                                               std::uint64_t seed) {
  if (victim == interferer) throw std::invalid_argument("interference_path_moments: victim == interferer");
  const Point bs_own = dep.cells[interferer].bs;
  const Point bs_vic = dep.cells[victim].bs;
  return detail::region_moments_mc(dep, interferer, n_samples, seed, [&](const Point& p) {
    return prm.eta * path_loss_db(prm, dist(p, bs_own)) - path_loss_db(prm, dist(p, bs_vic));
  });
}

// Moments of (eta-1)*L_11 for a UE in the victim's own region.
inline RegionMoments signal_path_moments(const Deployment& dep, int cell, const ChannelParams& prm,
                                         long n_samples, std::uint64_t seed) {
  const Point bs = dep.cells[cell].bs;
  return detail::region_moments_mc(dep, cell, n_samples, seed, [&](const Point& p) {
    return (prm.eta - 1.0) * path_loss_db(prm, dist(p, bs));
  });
}

// ---------------------------------------------------------------------------
// Two-step per-cell Gaussian approximation
// ---------------------------------------------------------------------------

// Q_b: mean = P0 + mu_L + mu_H, var = var_L + (1+eta^2)sigma^2 + var_H
inline GaussianApprox per_cell_interference_gaussian(const RegionMoments& path,
                                                     const ChannelParams& prm,
                                                     const FadingModel& fading) {
  Moments sh = interference_shadow_moments(prm);
  Moments h = fading_db_moments(fading);
  return {prm.p0_dbm + path.mu_l + sh.mean + h.mean, path.var_l + sh.var + h.var};
}

// G_1: mean = P0 + mu_L11bar, var = var_L11bar + (1-eta)^2 sigma^2
inline GaussianApprox signal_gaussian(const RegionMoments& path, const ChannelParams& prm) {
  Moments sh = signal_shadow_moments(prm);
  return {prm.p0_dbm + path.mu_l + sh.mean, path.var_l + sh.var};
}

// ---------------------------------------------------------------------------
// Power lognormal
// ---------------------------------------------------------------------------

inline double power_lognormal_cdf_db(const PowerLognormal& pl, double q) {
  return std::exp(pl.lambda * log_ndtr((q - pl.mu_q) / pl.sigma_q));
}

inline double power_lognormal_pdf_mw(const PowerLognormal& pl, double v) {
  if (v <= 0.0) throw std::domain_error("power_lognormal_pdf_mw: v must be > 0");
  double t = (kZeta * std::log(v) - pl.mu_q) / pl.sigma_q;
  double log_phi = -0.5 * t * t - 0.91893853320467274178;  // ln(1/sqrt(2pi)) offset
  double lp = std::log(pl.lambda) + (pl.lambda - 1.0) * log_ndtr(t) + log_phi;
  return std::exp(lp) * kZeta / (pl.sigma_q * v);
}

// mean/variance of the max of lambda iid standard normals (the dB shape
// factor of the power lognormal), by GH quadrature with normalized weights.
inline Moments max_std_normal_moments(double lambda, const GaussHermiteRule& rule) {
  double e1 = 0.0, e2 = 0.0, wsum = 0.0;
  double log_lambda = std::log(lambda);
  std::vector<double> lw(rule.order);
  double lw_max = -1e300;
  for (int m = 0; m < rule.order; ++m) {
    double t = 1.4142135623730950488017 * rule.nodes[m];
    lw[m] = std::log(rule.weights[m]) + log_lambda + (lambda - 1.0) * log_ndtr(t);
    lw_max = std::max(lw_max, lw[m]);
  }
  for (int m = 0; m < rule.order; ++m) {
    double t = 1.4142135623730950488017 * rule.nodes[m];
    double w = std::exp(lw[m] - lw_max);
    wsum += w;
    e1 += w * t;
    e2 += w * t * t;
  }
  e1 /= wsum;
  e2 /= wsum;
  return {e1, std::max(0.0, e2 - e1 * e1)};
}

namespace detail {

inline double logsumexp(const std::vector<double>& v) {
  double m = -1e300;
  for (double x : v) m = std::max(m, x);
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

// ln of the first three raw mW moments of the lognormal sum (closed form
// under independence).
inline void lognormal_sum_log_moments(const std::vector<GaussianApprox>& cells, double out[3]) {
  std::size_t n = cells.size();
  std::vector<double> la(n), lb(n), lc(n), tmp(n);
  for (std::size_t b = 0; b < n; ++b) {
    double mu = cells[b].mean / kZeta;
    double v = cells[b].var / (kZeta * kZeta);
    la[b] = mu + 0.5 * v;
    lb[b] = 2.0 * mu + 2.0 * v;
    lc[b] = 3.0 * mu + 4.5 * v;
  }
  double s1 = logsumexp(la);
  double s2 = logsumexp(lb);
  double s3 = logsumexp(lc);
  for (std::size_t b = 0; b < n; ++b) tmp[b] = 2.0 * la[b];
  double p2 = logsumexp(tmp);
  for (std::size_t b = 0; b < n; ++b) tmp[b] = 3.0 * la[b];
  double p3 = logsumexp(tmp);
  // sum over b != c of E[X_b^2] E[X_c], via full product minus diagonal
  double m = s2 + s1;
  double diag = 0.0;
  for (std::size_t b = 0; b < n; ++b) diag += std::exp(lb[b] + la[b] - m);
  double sba = n > 1 ? m + std::log1p(-diag) : -1e300;

  out[0] = s1;
  out[1] = 2.0 * s1 + std::log(std::exp(s2 - 2.0 * s1) + 1.0 - std::exp(p2 - 2.0 * s1));
  double triple = 1.0 - 3.0 * std::exp(p2 - 2.0 * s1) + 2.0 * std::exp(p3 - 3.0 * s1);
  double body = std::exp(s3 - 3.0 * s1) + (n > 1 ? 3.0 * std::exp(sba - 3.0 * s1) : 0.0) + triple;
  out[2] = 3.0 * s1 + std::log(body);
}

// ln E[exp(nQ/zeta)] for Q ~ PowerLognormal, via order-60 GH.
inline double pl_log_mw_moment(double lambda, double mu, double sigma, int n,
                               const GaussHermiteRule& rule) {
  double shift = static_cast<double>(n) * sigma / kZeta;
  std::vector<double> terms(rule.order);
  for (int m = 0; m < rule.order; ++m) {
    double t = 1.4142135623730950488017 * rule.nodes[m] + shift;
    terms[m] = std::log(rule.weights[m]) + (lambda - 1.0) * log_ndtr(t);
  }
  double g = logsumexp(terms) + std::log(lambda) - 0.5723649429247000870717137;  // ln(1/sqrt(pi))
  double nn = static_cast<double>(n);
  return nn * mu / kZeta + nn * nn * sigma * sigma / (2.0 * kZeta * kZeta) + g;
}

}  // namespace detail

// Spec'd scheme: match the first three raw mW moments of the lognormal sum.
// Robust for small cell counts; see fit_power_lognormal_ls for the scheme
// the analysis pipeline uses on large aggregates.
inline PowerLognormal fit_power_lognormal(const std::vector<GaussianApprox>& cells) {
  if (cells.empty()) throw std::invalid_argument("fit_power_lognormal: need >= 1 cell");
  double target[3];
  detail::lognormal_sum_log_moments(cells, target);
  GaussHermiteRule rule = gauss_hermite(60);

  auto residual = [&](const double u[3], double r[3]) {
    double lambda = std::exp(u[0]), mu = u[1], sigma = std::exp(u[2]);
    for (int n = 1; n <= 3; ++n)
      r[n - 1] = detail::pl_log_mw_moment(lambda, mu, sigma, n, rule) - target[n - 1];
  };
  auto max_abs = [](const double r[3]) {
    return std::max({std::fabs(r[0]), std::fabs(r[1]), std::fabs(r[2])});
  };

  double b_count = static_cast<double>(cells.size());
  double starts[3] = {1.0, std::max(1.0, b_count / 2.0), std::max(1.0, b_count)};
  double best_res = 1e300;
  PowerLognormal best;

  for (double lambda0 : starts) {
    // init: solve sigma from the mu-free combination ln m2 - 2 ln m1, then mu
    double t_gap = target[1] - 2.0 * target[0];
    double lo = std::log(1e-3), hi = std::log(1e3);
    auto gap = [&](double lsig) {
      double s = std::exp(lsig);
      return (detail::pl_log_mw_moment(lambda0, 0.0, s, 2, rule) -
              2.0 * detail::pl_log_mw_moment(lambda0, 0.0, s, 1, rule)) - t_gap;
    };
    if (gap(lo) > 0.0 || gap(hi) < 0.0) continue;  // start infeasible
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    double u[3];
    u[0] = std::log(lambda0);
    u[2] = 0.5 * (lo + hi);
    u[1] = (target[0] - detail::pl_log_mw_moment(lambda0, 0.0, std::exp(u[2]), 1, rule)) * kZeta;

    double r[3];
    residual(u, r);
    for (int iter = 0; iter < 80 && max_abs(r) > 1e-9; ++iter) {
      // numeric Jacobian
      double jac[3][3];
      for (int j = 0; j < 3; ++j) {
        double h = 1e-6;
        double up[3] = {u[0], u[1], u[2]}, um[3] = {u[0], u[1], u[2]};
        up[j] += h;
        um[j] -= h;
        double rp[3], rm[3];
        residual(up, rp);
        residual(um, rm);
        for (int i = 0; i < 3; ++i) jac[i][j] = (rp[i] - rm[i]) / (2.0 * h);
      }
      // solve jac * step = -r by Gaussian elimination with partial pivoting
      double a[3][4];
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a[i][j] = jac[i][j];
        a[i][3] = -r[i];
      }
      bool singular = false;
      for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int i = col + 1; i < 3; ++i)
          if (std::fabs(a[i][col]) > std::fabs(a[piv][col])) piv = i;
        if (std::fabs(a[piv][col]) < 1e-300) { singular = true; break; }
        if (piv != col)
          for (int j = col; j < 4; ++j) std::swap(a[piv][j], a[col][j]);
        for (int i = col + 1; i < 3; ++i) {
          double f = a[i][col] / a[col][col];
          for (int j = col; j < 4; ++j) a[i][j] -= f * a[col][j];
        }
      }
      if (singular) break;
      double step[3];
      for (int i = 2; i >= 0; --i) {
        double s = a[i][3];
        for (int j = i + 1; j < 3; ++j) s -= a[i][j] * step[j];
        step[i] = s / a[i][i];
      }
      // damped update
      double norm0 = max_abs(r);
      double damp = 1.0;
      bool accepted = false;
      for (int half = 0; half < 30; ++half) {
        double ut[3] = {u[0] + damp * step[0], u[1] + damp * step[1], u[2] + damp * step[2]};
        ut[0] = std::min(std::max(ut[0], -30.0), 60.0);
        ut[2] = std::min(std::max(ut[2], std::log(1e-6)), std::log(1e4));
        double rt[3];
        residual(ut, rt);
        if (max_abs(rt) < norm0) {
          for (int j = 0; j < 3; ++j) u[j] = ut[j];
          for (int j = 0; j < 3; ++j) r[j] = rt[j];
          accepted = true;
          break;
        }
        damp *= 0.5;
      }
      if (!accepted) break;
    }
    if (max_abs(r) < best_res) {
      best_res = max_abs(r);
      best = {std::exp(u[0]), u[1], std::exp(u[2])};
    }
    if (best_res <= 1e-8) break;
  }
  if (best_res > 1e-8)
    throw NumericalError("fit_power_lognormal: moment matching did not converge (best residual " +
                         std::to_string(best_res) + ")");
  return best;
}

// Pipeline fitting scheme: least-squares quantile fit of Phi^lambda to a
// seeded reference sample of the exact aggregate, with lambda clamped to
// [1, lambda_max]. The LS objective is monotone decreasing in lambda (flat
// valley), so the fit lands on the cap; the cap keeps the Theorem-2 outer
// quadrature weight resolvable.
inline PowerLognormal fit_power_lognormal_ls(const EmpiricalCdf& reference, double lambda_max,
                                             int n_quantiles = 299) {
  if (reference.size() < 16) throw std::invalid_argument("fit_power_lognormal_ls: reference too small");
  if (lambda_max < 1.0) throw std::invalid_argument("fit_power_lognormal_ls: lambda_max must be >= 1");
  std::vector<double> ps(n_quantiles), xs(n_quantiles);
  for (int i = 0; i < n_quantiles; ++i) {
    ps[i] = 0.002 + (0.998 - 0.002) * static_cast<double>(i) / (n_quantiles - 1);
    xs[i] = reference.quantile(ps[i]);
  }
  double mean = 0.0, var = 0.0;
  for (double s : reference.samples) mean += s;
  mean /= static_cast<double>(reference.size());
  for (double s : reference.samples) var += (s - mean) * (s - mean);
  var /= static_cast<double>(reference.size());

  GaussHermiteRule rule = gauss_hermite(128);
  Moments shape = max_std_normal_moments(lambda_max, rule);
  double u[3];  // (ln lambda, mu, ln sigma)
  u[0] = std::log(lambda_max);
  u[2] = 0.5 * std::log(std::max(var / std::max(shape.var, 1e-12), 1e-12));
  u[1] = mean - std::exp(u[2]) * shape.mean;

  auto clamp_u = [&](double v[3]) {
    v[0] = std::min(std::max(v[0], 0.0), std::log(lambda_max));
    v[2] = std::min(std::max(v[2], std::log(1e-3)), std::log(1e3));
  };
  auto residuals = [&](const double v[3], std::vector<double>& r) {
    double lambda = std::exp(v[0]), mu = v[1], sigma = std::exp(v[2]);
    r.resize(n_quantiles);
    for (int i = 0; i < n_quantiles; ++i)
      r[i] = std::exp(lambda * log_ndtr((xs[i] - mu) / sigma)) - ps[i];
  };
  auto sumsq = [](const std::vector<double>& r) {
    double s = 0.0;
    for (double x : r) s += x * x;
    return s;
  };

  std::vector<double> r, rt, rp;
  residuals(u, r);
  double cost = sumsq(r);
  double lm_damp = 1e-3;
  for (int iter = 0; iter < 200; ++iter) {
    // numeric Jacobian (n_quantiles x 3)
    std::vector<std::array<double, 3>> jac(n_quantiles);
    for (int j = 0; j < 3; ++j) {
      double h = 1e-6;
      double up[3] = {u[0], u[1], u[2]};
      up[j] += h;
      residuals(up, rp);
      for (int i = 0; i < n_quantiles; ++i) jac[i][j] = (rp[i] - r[i]) / h;
    }
    // normal equations with LM damping
    double jtj[3][3] = {}, jtr[3] = {};
    for (int i = 0; i < n_quantiles; ++i)
      for (int a = 0; a < 3; ++a) {
        jtr[a] += jac[i][a] * r[i];
        for (int b = 0; b < 3; ++b) jtj[a][b] += jac[i][a] * jac[i][b];
      }
    bool improved = false;
    for (int tries = 0; tries < 12; ++tries) {
      double m[3][4];
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) m[a][b] = jtj[a][b] + (a == b ? lm_damp * jtj[a][a] : 0.0);
        m[a][3] = -jtr[a];
      }
      // 3x3 solve
      bool singular = false;
      for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int i = col + 1; i < 3; ++i)
          if (std::fabs(m[i][col]) > std::fabs(m[piv][col])) piv = i;
        if (std::fabs(m[piv][col]) < 1e-300) { singular = true; break; }
        if (piv != col)
          for (int j = col; j < 4; ++j) std::swap(m[piv][j], m[col][j]);
        for (int i = col + 1; i < 3; ++i) {
          double f = m[i][col] / m[col][col];
          for (int j = col; j < 4; ++j) m[i][j] -= f * m[col][j];
        }
      }
      if (singular) { lm_damp *= 10.0; continue; }
      double step[3];
      for (int i = 2; i >= 0; --i) {
        double s = m[i][3];
        for (int j = i + 1; j < 3; ++j) s -= m[i][j] * step[j];
        step[i] = s / m[i][i];
      }
      double ut[3] = {u[0] + step[0], u[1] + step[1], u[2] + step[2]};
      clamp_u(ut);
      residuals(ut, rt);
      double ct = sumsq(rt);
      if (ct < cost) {
        double step_norm = std::fabs(ut[0] - u[0]) + std::fabs(ut[1] - u[1]) + std::fabs(ut[2] - u[2]);
        for (int j = 0; j < 3; ++j) u[j] = ut[j];
        r = rt;
        cost = ct;
        lm_damp = std::max(lm_damp * 0.3, 1e-12);
        improved = true;
        if (step_norm < 1e-10) iter = 200;
        break;
      }
      lm_damp *= 10.0;
    }
    if (!improved) break;
  }
  return {std::exp(u[0]), u[1], std::exp(u[2])};
}

// ---------------------------------------------------------------------------
// Analytic CDFs
// ---------------------------------------------------------------------------

// F_X1(x) ~= (1/sqrt(pi)) sum_m w_m F_H(x - (sqrt2 sigma_G1 a_m + mu_G1))
inline double signal_cdf(const GaussianApprox& g1, const FadingModel& fading,
                         const GaussHermiteRule& rule, double x) {
  if (g1.var < 0.0) throw std::invalid_argument("signal_cdf: negative variance");
  double sigma = std::sqrt(g1.var);
  if (sigma == 0.0) return fading_db_cdf(fading, x - g1.mean);
  double acc = 0.0;
  for (int m = 0; m < rule.order; ++m)
    acc += rule.weights[m] *
           fading_db_cdf(fading, x - (1.4142135623730950488017 * sigma * rule.nodes[m] + g1.mean));
  return std::min(1.0, std::max(0.0, acc * 0.5641895835477562869481));  // 1/sqrt(pi)
}

namespace detail {

// normalized outer weights lambda*Phi^(lambda-1)(sqrt2 a_m) w_m / sqrt(pi);
// they discretize a probability measure, so unit-sum normalization removes
// the leading quadrature error at large lambda.
inline std::vector<double> sir_outer_weights(const PowerLognormal& pl, const GaussHermiteRule& rule) {
  std::vector<double> lw(rule.order);
  double lw_max = -1e300;
  for (int m = 0; m < rule.order; ++m) {
    lw[m] = std::log(rule.weights[m]) +
            (pl.lambda - 1.0) * log_ndtr(1.4142135623730950488017 * rule.nodes[m]);
    lw_max = std::max(lw_max, lw[m]);
  }
  double sum = 0.0;
  for (int m = 0; m < rule.order; ++m) {
    lw[m] = std::exp(lw[m] - lw_max);
    sum += lw[m];
  }
  for (int m = 0; m < rule.order; ++m) lw[m] /= sum;
  return lw;
}

}  // namespace detail

// F_Z(z) ~= sum_m nw_m F_X1(z + sqrt2 sigma_Q a_m + mu_Q) -- the Theorem-2
// nested sum with an outer rule sized to resolve the Phi^(lambda-1) weight.
inline double sir_cdf(const GaussianApprox& g1, const FadingModel& fading, const PowerLognormal& pl,
                      const GaussHermiteRule& inner, const GaussHermiteRule& outer, double z) {
  if (pl.lambda <= 0.0 || pl.sigma_q <= 0.0) throw std::invalid_argument("sir_cdf: invalid power lognormal");
  std::vector<double> nw = detail::sir_outer_weights(pl, outer);
  double acc = 0.0;
  for (int m = 0; m < outer.order; ++m) {
    double q = 1.4142135623730950488017 * pl.sigma_q * outer.nodes[m] + pl.mu_q;
    acc += nw[m] * signal_cdf(g1, fading, inner, z + q);
  }
  return std::min(1.0, std::max(0.0, acc));
}

inline double sir_cdf(const GaussianApprox& g1, const FadingModel& fading, const PowerLognormal& pl,
                      const GaussHermiteRule& rule, double z) {
  return sir_cdf(g1, fading, pl, rule, rule, z);
}

// ---------------------------------------------------------------------------
// Tabulation and the end-to-end per-victim pipeline
// ---------------------------------------------------------------------------

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return g;
}

inline CdfCurve tabulate_signal_cdf(const GaussianApprox& g1, const FadingModel& fading,
                                    const GaussHermiteRule& rule, const std::vector<double>& grid) {
  CdfCurve c;
  c.grid = grid;
  c.probs.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) c.probs[i] = signal_cdf(g1, fading, rule, grid[i]);
  return c;
}

inline CdfCurve tabulate_power_lognormal_cdf(const PowerLognormal& pl, const std::vector<double>& grid) {
  CdfCurve c;
  c.grid = grid;
  c.probs.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) c.probs[i] = power_lognormal_cdf_db(pl, grid[i]);
  return c;
}

// Theorem-2 tabulation via a dense pre-tabulated signal curve: the outer sum
// then costs O(outer.order) interpolations per grid point.
inline CdfCurve tabulate_sir_cdf(const GaussianApprox& g1, const FadingModel& fading,
                                 const PowerLognormal& pl, const GaussHermiteRule& inner,
                                 const GaussHermiteRule& outer, const std::vector<double>& grid) {
  std::vector<double> nw = detail::sir_outer_weights(pl, outer);
  double qmax = 1.4142135623730950488017 * pl.sigma_q * outer.nodes.back() + pl.mu_q;
  double qmin = 1.4142135623730950488017 * pl.sigma_q * outer.nodes.front() + pl.mu_q;
  int fine_n = 4096;
  CdfCurve signal = tabulate_signal_cdf(
      g1, fading, inner, linspace(grid.front() + qmin - 1.0, grid.back() + qmax + 1.0, fine_n));
  CdfCurve c;
  c.grid = grid;
  c.probs.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double acc = 0.0;
    for (int m = 0; m < outer.order; ++m)
      acc += nw[m] * signal.eval(grid[i] + 1.4142135623730950488017 * pl.sigma_q * outer.nodes[m] + pl.mu_q);
    c.probs[i] = std::min(1.0, std::max(0.0, acc));
  }
  // enforce monotonicity against interpolation round-off
  for (std::size_t i = 1; i < c.probs.size(); ++i) c.probs[i] = std::max(c.probs[i], c.probs[i - 1]);
  return c;
}

struct AnalysisOptions {
  int m0 = 30;                // Theorem-1 rule order (and Theorem-2 inner)
  int sir_outer_order = 128;  // Theorem-2 outer rule order
  long n_samples = 100000;    // region-moment MC draws per cell
  long fit_samples = 200000;  // reference sample size for the aggregate fit
  int grid_points = 801;
  std::uint64_t seed = 1;
  int threads = 1;
  std::vector<double> sir_grid;  // optional fixed grid (macroscopic averaging)
};

struct AnalysisResult {
  RegionMoments signal_path;
  GaussianApprox g1;
  std::vector<GaussianApprox> cells;  // Q_b per interferer, in cell-id order (victim skipped)
  std::vector<int> interferer_ids;
  PowerLognormal pl;
  CdfCurve signal;
  CdfCurve sir;
  CdfCurve interference;
};

namespace detail {

inline constexpr std::uint64_t kTagSignalMoments = 0xa1;
inline constexpr std::uint64_t kTagInterfMoments = 0xa2;
inline constexpr std::uint64_t kTagFitReference = 0xa3;

}  // namespace detail

inline AnalysisResult analyze_cell(const Deployment& dep, int victim, const ChannelParams& prm,
                                   const FadingModel& fading, const AnalysisOptions& opt) {
  prm.validate();
  if (victim < 0 || victim >= dep.count()) throw std::out_of_range("analyze_cell: bad victim");
  if (dep.count() < 2) throw std::invalid_argument("analyze_cell: need >= 1 interferer");

  AnalysisResult res;
  res.signal_path = signal_path_moments(dep, victim, prm, opt.n_samples,
                                        derive_seed(opt.seed, detail::kTagSignalMoments, victim));
  res.g1 = signal_gaussian(res.signal_path, prm);

  int b_count = dep.count();
  res.interferer_ids.reserve(b_count - 1);
  for (int b = 0; b < b_count; ++b)
    if (b != victim) res.interferer_ids.push_back(b);
  res.cells.resize(res.interferer_ids.size());
  parallel_for(static_cast<long>(res.interferer_ids.size()), opt.threads, [&](long i) {
    int b = res.interferer_ids[i];
    RegionMoments path = interference_path_moments(
        dep, victim, b, prm, opt.n_samples, derive_seed(opt.seed, detail::kTagInterfMoments, victim, b));
    res.cells[i] = per_cell_interference_gaussian(path, prm, fading);
  });

  SimConfig ref_cfg;
  // a few channel draws per drop amortize the position setup without
  // starving the reference of placement variability
  ref_cfg.n_channel_draws = 4;
  ref_cfg.n_ue_drops = (opt.fit_samples + 3) / 4;
  ref_cfg.seed = derive_seed(opt.seed, detail::kTagFitReference, victim);
  ref_cfg.threads = opt.threads;
  EmpiricalCdf reference = simulate_interference_db(dep, victim, prm, fading, ref_cfg);
  res.pl = fit_power_lognormal_ls(reference, static_cast<double>(b_count));

  GaussHermiteRule inner = gauss_hermite(opt.m0);
  GaussHermiteRule outer = gauss_hermite(opt.sir_outer_order);
  Moments h = fading_db_moments(fading);
  Moments shape = max_std_normal_moments(res.pl.lambda, outer);

  double mean_x = res.g1.mean + h.mean;
  double std_x = std::sqrt(res.g1.var + h.var);
  res.signal = tabulate_signal_cdf(res.g1, fading, inner,
                                   linspace(mean_x - 8.0 * std_x, mean_x + 8.0 * std_x, opt.grid_points));

  double mean_q = res.pl.mu_q + res.pl.sigma_q * shape.mean;
  double std_q = res.pl.sigma_q * std::sqrt(std::max(shape.var, 1e-12));
  res.interference = tabulate_power_lognormal_cdf(
      res.pl, linspace(mean_q - 8.0 * std_q, mean_q + 8.0 * std_q, opt.grid_points));

  if (!opt.sir_grid.empty()) {
    res.sir = tabulate_sir_cdf(res.g1, fading, res.pl, inner, outer, opt.sir_grid);
  } else {
    double mean_z = mean_x - mean_q;
    double std_z = std::sqrt(std_x * std_x + std_q * std_q);
    res.sir = tabulate_sir_cdf(res.g1, fading, res.pl, inner, outer,
                               linspace(mean_z - 8.0 * std_z, mean_z + 8.0 * std_z, opt.grid_points));
  }
  return res;
}

}  // namespace dnaga
