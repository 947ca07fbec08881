#pragma once

#include <cmath>
#include <stdexcept>

#include "fading.hpp"

namespace dnaga {

struct ChannelParams {
  double a_db = 145.4;            // path loss at 1 km
  double alpha = 3.75;            // path-loss exponent
  double sigma_shadow_db = 10.0;  // per-link shadow STD
  double p0_dbm = -76.0;          // FPC target received power
  double eta = 0.8;               // FPC compensation factor, (0, 1]

  void validate() const {
    if (alpha <= 0.0) throw std::invalid_argument("channel.alpha must be > 0");
    if (sigma_shadow_db < 0.0) throw std::invalid_argument("channel.sigma_shadow_db must be >= 0");
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("channel.eta must be in (0, 1]");
  }
};

inline double path_loss_db(const ChannelParams& p, double d_km) {
  if (d_km <= 0.0) throw std::domain_error("path_loss_db: distance must be > 0");
  return p.a_db + p.alpha * 10.0 * std::log10(d_km);
}

inline double ul_tx_power_dbm(const ChannelParams& p, double l_bb, double s_bb) {
  return p.p0_dbm + p.eta * (l_bb + s_bb);
}

// eta*S_bb - S_b1 with i.i.d. N(0, sigma^2) links
inline Moments interference_shadow_moments(const ChannelParams& p) {
  double s2 = p.sigma_shadow_db * p.sigma_shadow_db;
  return {0.0, (1.0 + p.eta * p.eta) * s2};
}

// (eta-1)*S_11
inline Moments signal_shadow_moments(const ChannelParams& p) {
  double s2 = p.sigma_shadow_db * p.sigma_shadow_db;
  return {0.0, (1.0 - p.eta) * (1.0 - p.eta) * s2};
}

}  // namespace dnaga
