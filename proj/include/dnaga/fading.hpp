#pragma once

#include <cmath>
#include <stdexcept>

#include "rng.hpp"
#include "special.hpp"

namespace dnaga {

enum class FadingKind { Rayleigh, Nakagami, Constant };

// Multi-path gain in dB: H = 10*log10 |h|^2, with |h|^2 ~ Exp(1) (Rayleigh)
// or Gamma(k, theta) (Nakagami). Constant is a deterministic test stub.
struct FadingModel {
  FadingKind kind = FadingKind::Rayleigh;
  double k = 1.0;       // Gamma shape (Nakagami)
  double theta = 1.0;   // Gamma scale (Nakagami)
  double value_db = 0.0;  // Constant stub

  static FadingModel rayleigh() { return {FadingKind::Rayleigh, 1.0, 1.0, 0.0}; }
  static FadingModel nakagami(double k, double theta) {
    if (k <= 0.0 || theta <= 0.0) throw std::invalid_argument("nakagami: k and theta must be > 0");
    return {FadingKind::Nakagami, k, theta, 0.0};
  }
  static FadingModel constant(double value_db) { return {FadingKind::Constant, 1.0, 1.0, value_db}; }
};

inline double fading_db_cdf(const FadingModel& m, double h) {
  switch (m.kind) {
    case FadingKind::Rayleigh:
      return -std::expm1(-std::exp(h / kZeta));
    case FadingKind::Nakagami:
      return reg_lower_inc_gamma(m.k, std::exp(h / kZeta) / m.theta);
    case FadingKind::Constant:
      return h >= m.value_db ? 1.0 : 0.0;
  }
  return 0.0;
}

struct Moments {
  double mean;
  double var;
};

inline Moments fading_db_moments(const FadingModel& m) {
  switch (m.kind) {
    case FadingKind::Rayleigh:
      // k=1, theta=1: mean = -zeta*gamma_E, var = zeta^2 * pi^2/6
      return {kZeta * digamma(1.0), kZeta * kZeta * trigamma(1.0)};
    case FadingKind::Nakagami:
      return {kZeta * (digamma(m.k) + std::log(m.theta)), kZeta * kZeta * trigamma(m.k)};
    case FadingKind::Constant:
      return {m.value_db, 0.0};
  }
  return {0.0, 0.0};
}

inline double sample_fading_db(const FadingModel& m, Rng& rng) {
  switch (m.kind) {
    case FadingKind::Rayleigh:
      return kZeta * std::log(rng.exponential());
    case FadingKind::Nakagami:
      return kZeta * std::log(rng.gamma(m.k, m.theta));
    case FadingKind::Constant:
      return m.value_db;
  }
  return 0.0;
}

// linear-power gain sample (used by the simulator's mW accumulation)
inline double sample_fading_linear(const FadingModel& m, Rng& rng) {
  switch (m.kind) {
    case FadingKind::Rayleigh:
      return rng.exponential();
    case FadingKind::Nakagami:
      return rng.gamma(m.k, m.theta);
    case FadingKind::Constant:
      return std::exp(m.value_db / kZeta);
  }
  return 1.0;
}

}  // namespace dnaga
