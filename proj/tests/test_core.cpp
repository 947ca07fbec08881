#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <dnaga/core.hpp>

using namespace dnaga;

namespace {

ChannelParams default_params() { return ChannelParams{}; }

}  // namespace

TEST_CASE("per-cell interference Gaussian composes path, shadow, and fading moments") {
  RegionMoments path;
  path.mu_l = -50.0;
  path.var_l = 10.0;
  ChannelParams p = default_params();
  GaussianApprox g = per_cell_interference_gaussian(path, p, FadingModel::rayleigh());
  CHECK(g.mean == Catch::Approx(-128.507).margin(5e-4));
  CHECK(g.var == Catch::Approx(205.025).margin(5e-3));

  // composition is exact by construction: var(Q) = var(path) + var(shadow) + var(H)
  Moments h = fading_db_moments(FadingModel::nakagami(10.0, 0.1));
  GaussianApprox q = per_cell_interference_gaussian(path, p, FadingModel::nakagami(10.0, 0.1));
  CHECK(q.var == path.var_l + interference_shadow_moments(p).var + h.var);
  CHECK(q.mean == p.p0_dbm + path.mu_l + h.mean);

  // deterministic fading stub, tiny eta: (P0 + mu_L, ~sigma^2)
  ChannelParams tiny = p;
  tiny.eta = 1e-9;
  RegionMoments zero;
  zero.mu_l = -50.0;
  GaussianApprox d = per_cell_interference_gaussian(zero, tiny, FadingModel::constant(0.0));
  CHECK(d.mean == Catch::Approx(tiny.p0_dbm - 50.0));
  CHECK(d.var == Catch::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("signal Gaussian composition") {
  ChannelParams p = default_params();
  RegionMoments path;
  path.mu_l = -17.07;
  path.var_l = 1.97;
  GaussianApprox g = signal_gaussian(path, p);
  CHECK(g.mean == Catch::Approx(-93.07).margin(1e-9));
  CHECK(g.var == Catch::Approx(5.97).margin(1e-9));
  CHECK(g.var == path.var_l + signal_shadow_moments(p).var);
}

TEST_CASE("signal path moments vanish at full power compensation") {
  Deployment dep = generate_hex_lattice(55.43, 2);
  ChannelParams p = default_params();
  p.eta = 1.0;
  RegionMoments m = signal_path_moments(dep, 0, p, 5000, 1);
  CHECK(m.mu_l == Catch::Approx(0.0).margin(1e-12));
  CHECK(m.var_l == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("hex-lattice signal Gaussian reproduces the reference intermediates") {
  Deployment dep = generate_hex_lattice(55.43, 228);
  ChannelParams p = default_params();
  RegionMoments m = signal_path_moments(dep, 0, p, 500000, 11);
  CHECK(m.mu_l == Catch::Approx(-17.07).margin(0.15));
  CHECK(m.var_l == Catch::Approx(1.97).margin(0.15));
  GaussianApprox g = signal_gaussian(m, p);
  CHECK(g.mean == Catch::Approx(-93.07).margin(0.15));
  CHECK(g.var == Catch::Approx(5.97).margin(0.15));
}

TEST_CASE("interference path moments: symmetry and distance monotonicity") {
  ChannelParams p = default_params();

  // two identical isolated annular regions: moments symmetric in the roles
  Deployment two;
  two.min_bs_ue_km = 0.005;
  two.cells.push_back({0, {0.0, 0.0}, 0.04, UeDistKind::Uniform});
  two.cells.push_back({1, {0.5, 0.0}, 0.04, UeDistKind::Uniform});
  two.finalize();
  RegionMoments a = interference_path_moments(two, 0, 1, p, 200000, 3);
  RegionMoments b = interference_path_moments(two, 1, 0, p, 200000, 3);
  CHECK(a.mu_l == Catch::Approx(b.mu_l).margin(3.0 * (a.std_error + b.std_error)));

  // near-full compensation: mean decreases as the victim moves away
  ChannelParams nf = p;
  nf.eta = 0.999999;
  double prev = 1e300;
  for (double D : {0.1, 0.2, 0.4}) {
    Deployment dd;
    dd.min_bs_ue_km = 0.005;
    dd.cells.push_back({0, {0.0, 0.0}, 0.04, UeDistKind::Uniform});
    dd.cells.push_back({1, {D, 0.0}, 0.04, UeDistKind::Uniform});
    dd.finalize();
    RegionMoments m = interference_path_moments(dd, 0, 1, nf, 100000, 5);
    CHECK(m.mu_l < prev);
    prev = m.mu_l;
  }

  CHECK_THROWS(interference_path_moments(two, 0, 0, p, 1000, 1));
}

TEST_CASE("interference path mean matches a brute-force oracle") {
  ChannelParams p = default_params();
  Deployment two;
  two.min_bs_ue_km = 0.01;
  two.cells.push_back({0, {0.0, 0.0}, 0.04, UeDistKind::Uniform});
  two.cells.push_back({1, {0.5, 0.0}, 0.04, UeDistKind::Uniform});
  two.finalize();
  RegionMoments m = interference_path_moments(two, 0, 1, p, 1000000, 13);

  // independent oracle: different seed, direct annulus radial draw
  Rng rng(987654321);
  const long n = 10000000;
  double sum = 0.0, sumsq = 0.0;
  for (long i = 0; i < n; ++i) {
    double u = rng.uniform();
    double r = std::sqrt(0.01 * 0.01 + u * (0.04 * 0.04 - 0.01 * 0.01));
    double phi = rng.uniform(0.0, 2.0 * M_PI);
    double x = 0.5 + r * std::cos(phi), y = r * std::sin(phi);
    double v = p.eta * path_loss_db(p, r) - path_loss_db(p, std::hypot(x, y));
    sum += v;
    sumsq += v * v;
  }
  double oracle_mean = sum / n;
  double oracle_se = std::sqrt((sumsq / n - oracle_mean * oracle_mean) / n);
  CHECK(std::fabs(m.mu_l - oracle_mean) < 3.0 * (m.std_error + oracle_se));
}

TEST_CASE("power lognormal CDF basics") {
  PowerLognormal one{1.0, -100.0, 5.0};
  for (double q = -130.0; q <= -70.0; q += 2.5)
    CHECK(power_lognormal_cdf_db(one, q) ==
          Catch::Approx(std_normal_cdf((q + 100.0) / 5.0)).epsilon(1e-12));

  PowerLognormal two{2.0, -100.0, 5.0};
  CHECK(power_lognormal_cdf_db(two, -100.0) == Catch::Approx(0.25).epsilon(1e-12));

  // monotone and bounded
  PowerLognormal big{228.0, -137.0, 14.0};
  double prev = -1.0;
  for (double q = -200.0; q <= 0.0; q += 0.5) {
    double f = power_lognormal_cdf_db(big, q);
    CHECK((f >= prev && f >= 0.0 && f <= 1.0));
    prev = f;
  }
}

TEST_CASE("power lognormal mW density integrates to one") {
  for (auto pl : {PowerLognormal{1.0, -10.0, 3.0}, PowerLognormal{20.0, -30.0, 8.0}}) {
    // substitute v = exp(q/zeta): integral becomes dq-integral of pdf * v / zeta
    Moments shape = max_std_normal_moments(pl.lambda, gauss_hermite(128));
    double mid = pl.mu_q + pl.sigma_q * shape.mean;
    double lo = mid - 16.0 * pl.sigma_q, hi = mid + 16.0 * pl.sigma_q;
    const int n = 20000;  // Simpson
    double hstep = (hi - lo) / n, acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      double q = lo + i * hstep;
      double v = db_to_mw(q);
      double f = power_lognormal_pdf_mw(pl, v) * v / kZeta;
      acc += f * ((i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0));
    }
    acc *= hstep / 3.0;
    CHECK(acc == Catch::Approx(1.0).margin(1e-6));
  }
  CHECK_THROWS(power_lognormal_pdf_mw(PowerLognormal{1.0, 0.0, 1.0}, 0.0));
}

TEST_CASE("moment-matching fit: single lognormal is exact") {
  std::vector<GaussianApprox> cells{{-120.0, 36.0}};
  PowerLognormal pl = fit_power_lognormal(cells);
  CHECK(pl.lambda == Catch::Approx(1.0).margin(1e-6));
  CHECK(pl.mu_q == Catch::Approx(-120.0).margin(1e-6));
  CHECK(pl.sigma_q == Catch::Approx(6.0).margin(1e-6));
}

TEST_CASE("moment-matching fit: matched moments equal the closed-form targets") {
  std::vector<GaussianApprox> cells{{0.0, 1.0}, {0.0, 1.0}};
  PowerLognormal pl = fit_power_lognormal(cells);
  double target[3];
  detail::lognormal_sum_log_moments(cells, target);
  GaussHermiteRule rule = gauss_hermite(128);  // independent, higher order
  for (int n = 1; n <= 3; ++n)
    CHECK(detail::pl_log_mw_moment(pl.lambda, pl.mu_q, pl.sigma_q, n, rule) ==
          Catch::Approx(target[n - 1]).margin(1e-6));
}

TEST_CASE("moment-matching fit: two identical cells vs a Monte Carlo sum") {
  std::vector<GaussianApprox> cells{{0.0, 1.0}, {0.0, 1.0}};
  PowerLognormal pl = fit_power_lognormal(cells);
  const long n = 1000000;
  Rng rng(5150);
  std::vector<double> s(n);
  for (long i = 0; i < n; ++i)
    s[i] = mw_to_db(db_to_mw(rng.normal()) + db_to_mw(rng.normal()));
  EmpiricalCdf emp(std::move(s));
  CdfCurve curve;
  for (int i = 0; i <= 2000; ++i) {
    double q = emp.samples.front() + (emp.samples.back() - emp.samples.front()) * i / 2000.0;
    curve.grid.push_back(q);
    curve.probs.push_back(power_lognormal_cdf_db(pl, q));
  }
  CHECK(ks_distance(emp, curve) <= 0.01);
}

TEST_CASE("quantile fit recovers shape parameters from its own samples") {
  PowerLognormal truth{1.0, -100.0, 6.0};
  const long n = 200000;
  Rng rng(31337);
  std::vector<double> s(n);
  for (long i = 0; i < n; ++i) s[i] = -100.0 + 6.0 * rng.normal();
  PowerLognormal fit = fit_power_lognormal_ls(EmpiricalCdf(std::move(s)), 4.0);
  // lambda/mu/sigma trade off along a near-flat valley; check the CDF itself
  for (double q : {-112.0, -106.0, -100.0, -94.0, -88.0})
    CHECK(power_lognormal_cdf_db(fit, q) ==
          Catch::Approx(power_lognormal_cdf_db(truth, q)).margin(0.01));
}

TEST_CASE("signal CDF: degenerate Gaussian reduces to the fading CDF") {
  GaussianApprox g{0.0, 0.0};
  GaussHermiteRule rule = gauss_hermite(30);
  CHECK(signal_cdf(g, FadingModel::rayleigh(), rule, 0.0) ==
        Catch::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  for (double x = -20.0; x <= 20.0; x += 1.7)
    CHECK(signal_cdf(g, FadingModel::nakagami(10.0, 0.1), rule, x) ==
          Catch::Approx(fading_db_cdf(FadingModel::nakagami(10.0, 0.1), x)).margin(1e-12));
}

TEST_CASE("signal CDF: monotone and converged at order 30") {
  GaussianApprox g{-93.07, 5.97};
  GaussHermiteRule r30 = gauss_hermite(30), r60 = gauss_hermite(60);
  for (auto fading : {FadingModel::rayleigh(), FadingModel::nakagami(10.0, 0.1)}) {
    double prev = -1.0;
    for (double x = -130.0; x <= -60.0; x += 0.07) {
      double f = signal_cdf(g, fading, r30, x);
      CHECK(f >= prev);
      CHECK((f >= 0.0 && f <= 1.0));
      CHECK(std::fabs(f - signal_cdf(g, fading, r60, x)) < 1e-6);
      prev = f;
    }
  }
}

TEST_CASE("SIR CDF: degenerate interference reduces to a shifted signal CDF") {
  GaussianApprox g{-93.07, 5.97};
  PowerLognormal pl{1.0, -120.0, 1e-9};
  GaussHermiteRule rule = gauss_hermite(30);
  for (double z = -10.0; z <= 60.0; z += 3.3)
    CHECK(sir_cdf(g, FadingModel::rayleigh(), pl, rule, z) ==
          Catch::Approx(signal_cdf(g, FadingModel::rayleigh(), rule, z - 120.0)).margin(1e-6));
}

TEST_CASE("SIR CDF: monotone, bounded, and outer-order converged") {
  GaussianApprox g{-93.07, 5.97};
  PowerLognormal pl{228.0, -136.9, 14.0};
  GaussHermiteRule inner = gauss_hermite(30);
  GaussHermiteRule o128 = gauss_hermite(128), o256 = gauss_hermite(256);
  double prev = -1.0;
  for (double z = -40.0; z <= 50.0; z += 0.45) {
    double f = sir_cdf(g, FadingModel::rayleigh(), pl, inner, o128, z);
    CHECK(f >= prev);
    CHECK((f >= 0.0 && f <= 1.0));
    CHECK(std::fabs(f - sir_cdf(g, FadingModel::rayleigh(), pl, inner, o256, z)) < 1e-4);
    prev = f;
  }
}

TEST_CASE("tabulated SIR curve matches direct evaluation") {
  GaussianApprox g{-93.07, 5.97};
  PowerLognormal pl{228.0, -136.9, 14.0};
  GaussHermiteRule inner = gauss_hermite(30), outer = gauss_hermite(128);
  std::vector<double> grid = linspace(-30.0, 50.0, 161);
  CdfCurve c = tabulate_sir_cdf(g, FadingModel::rayleigh(), pl, inner, outer, grid);
  REQUIRE(c.valid());
  for (std::size_t i = 0; i < grid.size(); i += 10)
    CHECK(c.probs[i] ==
          Catch::Approx(sir_cdf(g, FadingModel::rayleigh(), pl, inner, outer, grid[i])).margin(2e-4));
}

TEST_CASE("two-cell end-to-end pipeline") {
  Deployment dep = generate_hex_lattice(10.0, 2);
  ChannelParams p = default_params();
  AnalysisOptions opt;
  opt.n_samples = 20000;
  opt.fit_samples = 20000;
  opt.grid_points = 301;
  opt.sir_outer_order = 64;
  opt.seed = 7;
  AnalysisResult res = analyze_cell(dep, 0, p, FadingModel::rayleigh(), opt);
  CHECK(res.pl.lambda >= 0.5);
  CHECK(res.pl.lambda <= 2.0);
  CHECK(res.signal.valid());
  CHECK(res.interference.valid());
  CHECK(res.sir.valid());
  CHECK(res.interferer_ids.size() == 1);
}

TEST_CASE("pipeline is deterministic and thread-count independent") {
  Deployment dep = generate_hex_lattice(55.43, 12);
  ChannelParams p = default_params();
  AnalysisOptions opt;
  opt.n_samples = 5000;
  opt.fit_samples = 5000;
  opt.grid_points = 201;
  opt.sir_outer_order = 64;
  opt.seed = 99;
  AnalysisResult a = analyze_cell(dep, 0, p, FadingModel::rayleigh(), opt);
  AnalysisResult b = analyze_cell(dep, 0, p, FadingModel::rayleigh(), opt);
  opt.threads = 3;
  AnalysisResult c = analyze_cell(dep, 0, p, FadingModel::rayleigh(), opt);
  REQUIRE(a.sir.probs.size() == b.sir.probs.size());
  for (std::size_t i = 0; i < a.sir.probs.size(); ++i) {
    CHECK(a.sir.probs[i] == b.sir.probs[i]);
    CHECK(a.sir.probs[i] == c.sir.probs[i]);
  }
  CHECK(a.pl.lambda == c.pl.lambda);
  CHECK(a.g1.mean == c.g1.mean);
}

TEST_CASE("pipeline rejects bad victims") {
  Deployment dep = generate_hex_lattice(55.43, 3);
  AnalysisOptions opt;
  opt.n_samples = 100;
  opt.fit_samples = 100;
  CHECK_THROWS(analyze_cell(dep, 5, default_params(), FadingModel::rayleigh(), opt));
  CHECK_THROWS(analyze_cell(dep, -1, default_params(), FadingModel::rayleigh(), opt));
}
