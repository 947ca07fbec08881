#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cdf.hpp"
#include "channel.hpp"
#include "fading.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "scenario.hpp"

namespace dnaga {

// Monte Carlo ground truth. Randomness is factorized per the system model:
// an outer loop over UE placements (drops), an inner loop over shadow and
// multi-path draws, each unit on its own counter-derived RNG substream.
struct SimConfig {
  long n_ue_drops = 1000;
  long n_channel_draws = 1000;
  std::uint64_t seed = 1;
  int victim = 0;  // -1: rotate the victim across drops (drop index mod B)
  int threads = 1;

  void validate() const {
    if (n_ue_drops < 1 || n_channel_draws < 1)
      throw std::invalid_argument("simulation counts must be >= 1");
  }
};

namespace detail {

// substream purpose tags
inline constexpr std::uint64_t kTagUePos = 0x75;
inline constexpr std::uint64_t kTagChannel = 0x63;

enum class SimTarget { Sir, InterferenceDb, SignalDb };

inline void simulate_drop(const Deployment& dep, int victim, const ChannelParams& prm,
                          const FadingModel& fading, const SimConfig& cfg, long drop,
                          SimTarget target, std::vector<double>& out) {
  int b_count = dep.count();
  const Cell& vic = dep.cells[victim];
  std::vector<double> l_own(b_count), l_vic(b_count);
  for (int b = 0; b < b_count; ++b) {
    Rng pos_rng(derive_seed(cfg.seed, kTagUePos, static_cast<std::uint64_t>(drop), b));
    Point p = sample_ue(dep, b, pos_rng);
    l_own[b] = path_loss_db(prm, dist(p, dep.cells[b].bs));
    l_vic[b] = path_loss_db(prm, dist(p, vic.bs));
  }
  double sigma = prm.sigma_shadow_db;
  out.resize(cfg.n_channel_draws);
  for (long draw = 0; draw < cfg.n_channel_draws; ++draw) {
    std::uint64_t unit = (static_cast<std::uint64_t>(drop) << 24) ^ static_cast<std::uint64_t>(draw);
    double agg_mw = 0.0;
    if (target != SimTarget::SignalDb) {
      for (int b = 0; b < b_count; ++b) {
        if (b == victim) continue;
        Rng rng(derive_seed(cfg.seed, kTagChannel, unit, b));
        double s_bb = sigma * rng.normal();
        double s_b1 = sigma * rng.normal();
        double gain = sample_fading_linear(fading, rng);
        double i_db = ul_tx_power_dbm(prm, l_own[b], s_bb) - l_vic[b] - s_b1;
        agg_mw += db_to_mw(i_db) * gain;
      }
    }
    double x1 = 0.0;
    if (target != SimTarget::InterferenceDb) {
      Rng rng(derive_seed(cfg.seed, kTagChannel, unit, static_cast<std::uint64_t>(victim) | (1ull << 32)));
      double s_11 = sigma * rng.normal();
      double h_11 = sample_fading_db(fading, rng);
      x1 = prm.p0_dbm + (prm.eta - 1.0) * (l_own[victim] + s_11) + h_11;
    }
    switch (target) {
      case SimTarget::Sir: out[draw] = x1 - mw_to_db(agg_mw); break;
      case SimTarget::InterferenceDb: out[draw] = mw_to_db(agg_mw); break;
      case SimTarget::SignalDb: out[draw] = x1; break;
    }
  }
}

inline EmpiricalCdf simulate(const Deployment& dep, int victim, const ChannelParams& prm,
                             const FadingModel& fading, const SimConfig& cfg, SimTarget target) {
  cfg.validate();
  prm.validate();
  if (dep.count() < 1) throw std::invalid_argument("simulate: empty deployment");
  if (target != SimTarget::SignalDb && dep.count() < 2)
    throw std::invalid_argument("simulate: need at least one interferer");
  if (victim >= dep.count() || victim < -1)
    throw std::out_of_range("simulate: bad victim index");
  std::vector<std::vector<double>> slots(cfg.n_ue_drops);
  parallel_for(cfg.n_ue_drops, cfg.threads, [&](long drop) {
    int v = victim >= 0 ? victim : static_cast<int>(drop % dep.count());
    simulate_drop(dep, v, prm, fading, cfg, drop, target, slots[drop]);
  });
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(cfg.n_ue_drops * cfg.n_channel_draws));
  for (auto& s : slots) all.insert(all.end(), s.begin(), s.end());
  return EmpiricalCdf(std::move(all));
}

}  // namespace detail

inline EmpiricalCdf simulate_sir(const Deployment& dep, int victim, const ChannelParams& prm,
                                 const FadingModel& fading, const SimConfig& cfg) {
  return detail::simulate(dep, victim, prm, fading, cfg, detail::SimTarget::Sir);
}

inline EmpiricalCdf simulate_interference_db(const Deployment& dep, int victim,
                                             const ChannelParams& prm, const FadingModel& fading,
                                             const SimConfig& cfg) {
  return detail::simulate(dep, victim, prm, fading, cfg, detail::SimTarget::InterferenceDb);
}

inline EmpiricalCdf simulate_signal_db(const Deployment& dep, int victim, const ChannelParams& prm,
                                       const FadingModel& fading, const SimConfig& cfg) {
  return detail::simulate(dep, victim, prm, fading, cfg, detail::SimTarget::SignalDb);
}

}  // namespace dnaga
