#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <dnaga/quadrature.hpp>

using namespace dnaga;

namespace {

// closed-form moment of the Hermite weight: int y^{2j} e^{-y^2} dy
// = sqrt(pi) (2j-1)!! / 2^j
double hermite_even_moment(int j) {
  double m = std::sqrt(M_PI);
  for (int i = 1; i <= j; ++i) m *= (2.0 * i - 1.0) / 2.0;
  return m;
}

}  // namespace

TEST_CASE("low-order rules match hand-solved nodes") {
  auto r1 = gauss_hermite(1);
  REQUIRE(r1.order == 1);
  CHECK(r1.nodes[0] == Catch::Approx(0.0).margin(1e-14));
  CHECK(r1.weights[0] == Catch::Approx(std::sqrt(M_PI)).epsilon(1e-14));

  auto r2 = gauss_hermite(2);
  CHECK(r2.nodes[0] == Catch::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(r2.nodes[1] == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
  CHECK(r2.weights[0] == Catch::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-13));
  CHECK(r2.weights[1] == Catch::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-13));
}

TEST_CASE("weights sum to sqrt(pi) and nodes are symmetric") {
  for (int order : {1, 2, 3, 5, 10, 30, 60, 128, 256, 512}) {
    auto r = gauss_hermite(order);
    double sum = 0.0;
    for (double w : r.weights) {
      // extreme-tail weights may underflow to exactly zero at high order;
      // they are consumed in log space downstream, so only negativity is fatal
      if (order <= 128) CHECK(w > 0.0);
      else CHECK(w >= 0.0);
      sum += w;
    }
    CHECK(sum == Catch::Approx(std::sqrt(M_PI)).epsilon(1e-10));
    for (int m = 0; m < order; ++m) {
      CHECK(r.nodes[m] == Catch::Approx(-r.nodes[order - 1 - m]).margin(1e-12));
      CHECK(r.weights[m] == Catch::Approx(r.weights[order - 1 - m]).epsilon(1e-10));
      if (m) CHECK(r.nodes[m] > r.nodes[m - 1]);
    }
  }
}

TEST_CASE("even-moment identities hold up to polynomial exactness") {
  for (int order : {2, 5, 10, 17, 30}) {
    auto r = gauss_hermite(order);
    for (int j = 0; j <= order - 1; ++j) {
      double est = 0.0;
      for (int m = 0; m < order; ++m) est += r.weights[m] * std::pow(r.nodes[m], 2 * j);
      CHECK_THAT(est, Catch::Matchers::WithinRel(hermite_even_moment(j), 1e-10) ||
                          Catch::Matchers::WithinAbs(hermite_even_moment(j), 1e-10));
    }
  }
}

TEST_CASE("order-30 second moment is sqrt(pi)/2 to near machine precision") {
  auto r = gauss_hermite(30);
  double est = 0.0;
  for (int m = 0; m < 30; ++m) est += r.weights[m] * r.nodes[m] * r.nodes[m];
  CHECK(est == Catch::Approx(0.5 * std::sqrt(M_PI)).margin(1e-12));
}

TEST_CASE("order is range checked") {
  CHECK_THROWS(gauss_hermite(0));
  CHECK_THROWS(gauss_hermite(-3));
  CHECK_THROWS(gauss_hermite(513));
}
