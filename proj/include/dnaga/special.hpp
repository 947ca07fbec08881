#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dnaga {

// dB <-> natural log conversion scalar: x_dB = zeta * ln(x_linear)
inline constexpr double kZeta = 4.342944819032518276511289;  // 10 / ln 10

inline double db_to_mw(double db) { return std::exp(db / kZeta); }
inline double mw_to_db(double mw) { return kZeta * std::log(mw); }

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x * 0.7071067811865475244008444);
}

// log Phi(x), stable in the deep lower tail where erfc underflows.
inline double log_ndtr(double x) {
  if (x > -1.0) return std::log1p(-0.5 * std::erfc(x * 0.7071067811865475244008444));
  if (x > -37.0) return std::log(0.5 * std::erfc(-x * 0.7071067811865475244008444));
  // asymptotic: Phi(x) ~ phi(x)/(-x) * (1 - 1/x^2 + 3/x^4)
  double x2 = x * x;
  return -0.5 * x2 - 0.5 * std::log(6.283185307179586476925287) - std::log(-x)
         + std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
}

// Inverse standard normal CDF (Wichura, AS 241, double precision).
inline double ndtri(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw NumericalError("ndtri: p outside [0,1]");
  }
  double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
              3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
            4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
            2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
            5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

inline double digamma(double x) {
  if (x <= 0.0) throw NumericalError("digamma: non-positive argument");
  double result = 0.0;
  while (x < 6.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  double inv = 1.0 / x, inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv;
  // Bernoulli series B2..B12
  result -= inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * 691.0 / 32760)))));
  return result;
}

inline double trigamma(double x) {
  if (x <= 0.0) throw NumericalError("trigamma: non-positive argument");
  double result = 0.0;
  while (x < 6.0) {
    result += 1.0 / (x * x);
    x += 1.0;
  }
  double inv = 1.0 / x, inv2 = inv * inv;
  result += inv * (1.0 + 0.5 * inv + inv2 * (1.0 / 6 - inv2 * (1.0 / 30 - inv2 * (1.0 / 42 - inv2 / 30))));
  return result;
}

inline double log_gamma(double x) {
  if (x <= 0.0) throw NumericalError("log_gamma: non-positive argument");
  return std::lgamma(x);
}

// Regularized lower incomplete gamma P(k, x): series for x < k+1, Lentz
// continued fraction for the complement otherwise.
inline double reg_lower_inc_gamma(double k, double x) {
  if (k <= 0.0) throw NumericalError("reg_lower_inc_gamma: non-positive shape");
  if (x < 0.0) throw NumericalError("reg_lower_inc_gamma: negative argument");
  if (x == 0.0) return 0.0;
  double lg = std::lgamma(k);
  if (x < k + 1.0) {
    double ap = k, sum = 1.0 / k, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + k * std::log(x) - lg);
  }
  double tiny = 1e-300;
  double b = x + 1.0 - k, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - k);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  double q = std::exp(-x + k * std::log(x) - lg) * h;
  return 1.0 - q;
}

}  // namespace dnaga
