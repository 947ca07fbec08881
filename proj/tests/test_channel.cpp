#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <dnaga/channel.hpp>
#include <dnaga/rng.hpp>

using namespace dnaga;

TEST_CASE("path loss arithmetic") {
  ChannelParams p;  // defaults: a_db=145.4, alpha=3.75
  CHECK(path_loss_db(p, 1.0) == Catch::Approx(145.4));
  CHECK(path_loss_db(p, 0.04) == Catch::Approx(145.4 + 37.5 * std::log10(0.04)).epsilon(1e-12));
  CHECK(path_loss_db(p, 0.04) == Catch::Approx(92.98).margin(0.01));
  CHECK(path_loss_db(p, 0.1) == Catch::Approx(145.4 - 37.5).epsilon(1e-12));
  CHECK_THROWS_AS(path_loss_db(p, 0.0), std::domain_error);
  CHECK_THROWS_AS(path_loss_db(p, -1.0), std::domain_error);
}

TEST_CASE("uplink transmit power under fractional power control") {
  ChannelParams p;
  CHECK(ul_tx_power_dbm(p, 85.0, 0.0) == Catch::Approx(-8.0));
  CHECK(ul_tx_power_dbm(p, 85.35, 10.0) == Catch::Approx(0.28).margin(1e-12));
  ChannelParams full = p;
  full.eta = 1.0;
  CHECK(ul_tx_power_dbm(full, 85.0, 3.0) == Catch::Approx(p.p0_dbm + 88.0));
}

TEST_CASE("shadow moment composition") {
  ChannelParams p;  // eta=0.8, sigma=10
  Moments i = interference_shadow_moments(p);
  CHECK(i.mean == 0.0);
  CHECK(i.var == Catch::Approx(164.0));
  Moments s = signal_shadow_moments(p);
  CHECK(s.mean == 0.0);
  CHECK(s.var == Catch::Approx(4.0));

  ChannelParams full = p;
  full.eta = 1.0;
  CHECK(interference_shadow_moments(full).var == Catch::Approx(200.0));
  CHECK(signal_shadow_moments(full).var == Catch::Approx(0.0).margin(1e-15));

  ChannelParams half = p;
  half.eta = 0.5;
  CHECK(signal_shadow_moments(half).var == Catch::Approx(25.0));

  ChannelParams tiny = p;
  tiny.eta = 1e-9;
  CHECK(interference_shadow_moments(tiny).var == Catch::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("interference shadow variance always exceeds the signal one") {
  for (double eta = 0.05; eta <= 1.0; eta += 0.05) {
    ChannelParams p;
    p.eta = eta;
    CHECK(interference_shadow_moments(p).var > signal_shadow_moments(p).var);
  }
}

TEST_CASE("combined shadow variance matches Monte Carlo within 3 SE") {
  ChannelParams p;
  const long n = 1000000;
  Rng rng(314159);
  double sum = 0.0, sumsq = 0.0;
  for (long i = 0; i < n; ++i) {
    double s_bb = p.sigma_shadow_db * rng.normal();
    double s_b1 = p.sigma_shadow_db * rng.normal();
    double v = p.eta * s_bb - s_b1;
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / n;
  double var = sumsq / n - mean * mean;
  double ref = interference_shadow_moments(p).var;
  // SE of a normal sample variance: var * sqrt(2/n)
  CHECK(std::fabs(var - ref) < 3.0 * ref * std::sqrt(2.0 / n));
  CHECK(std::fabs(mean) < 3.0 * std::sqrt(ref / n));
}

TEST_CASE("parameter validation") {
  ChannelParams p;
  p.eta = 0.0;
  CHECK_THROWS(p.validate());
  p.eta = 1.5;
  CHECK_THROWS(p.validate());
  p.eta = 0.8;
  p.alpha = 0.0;
  CHECK_THROWS(p.validate());
  p.alpha = 3.75;
  p.sigma_shadow_db = -1.0;
  CHECK_THROWS(p.validate());
}
