#pragma once

// Channel, rate, load, power and cost primitives.

#include <cmath>
#include <vector>

#include "scnet/common.hpp"
#include "scnet/scenario.hpp"

namespace scnet {

// Distance-dependent path loss in dB; distinct intercepts for macro and
// small cells, both with slope 37.6 dB/decade over distance in km.
inline double path_loss_db(bs_kind kind, double dist_m) {
  if (!(dist_m > 0.0)) throw invalid_geometry("path loss needs a positive distance");
  double d_km = dist_m / 1000.0;
  double intercept = (kind == bs_kind::mbs) ? 128.1 : 140.7;
  return intercept + 37.6 * std::log10(d_km);
}

// Linear channel gain h = 10^(-PL/10).
inline double channel_gain(bs_kind kind, double dist_m) {
  return std::pow(10.0, -path_loss_db(kind, dist_m) / 10.0);
}

// Precomputed gain matrix h[bs][ue] for a static scenario.
inline std::vector<std::vector<double>> gain_matrix(const network_scenario& scn) {
  std::vector<std::vector<double>> h(scn.num_bs(),
                                     std::vector<double>(scn.num_ue(), 0.0));
  for (int b = 0; b < scn.num_bs(); ++b)
    for (int u = 0; u < scn.num_ue(); ++u)
      h[b][u] = channel_gain(scn.bs[b].kind, distance(scn.bs[b].pos, scn.ue[u]));
  return h;
}

// Shannon rate of a UE served with power p_w over gain `gain`, against
// aggregated out-of-cluster interference (watts at the UE) plus thermal
// noise over the band.
inline double ue_rate(double p_w, double gain, double interference_w,
                      double noise_w, double bandwidth_hz) {
  if (!(p_w > 0.0)) throw invalid_state("rate requested from an OFF or zero-power BS");
  double sinr = p_w * gain / (interference_w + noise_w);
  return bandwidth_hz * std::log2(1.0 + sinr);
}

struct load_result {
  double rho = 0.0;       // fraction of time needed to carry the demand
  bool overloaded = false;  // true if the raw demand exceeded one slot
};

// Fraction-of-time load: sum of eta/R over served UEs, clamped to [0, 1].
// A zero/invalid rate contributes a full slot and flags overload.
inline load_result bs_load(double traffic_bps, const std::vector<double>& rates) {
  load_result out;
  double raw = 0.0;
  for (double r : rates) {
    if (r > 0.0 && std::isfinite(r)) {
      raw += traffic_bps / r;
    } else {
      raw += 1.0;
      out.overloaded = true;
    }
  }
  if (raw > 1.0) {
    out.overloaded = true;
    raw = 1.0;
  }
  out.rho = raw;
  return out;
}

// Total power drawn by a BS this slot. OFF: residual share of base power.
// ON: amplifier draw proportional to the time the transmitter is busy, plus
// base power. `coordination_w` is the clustering overhead applied by the
// caller (zero for unclustered BSs, and for OFF BSs if configured so).
inline double bs_power(const bs_spec& b, bool on, double rho, double p_tx_w,
                       double coordination_w) {
  double base = on ? (rho * p_tx_w / b.amp_eff + b.p_base_w)
                   : (b.sleep_fraction * b.p_base_w);
  return base + coordination_w;
}

// Normalized per-BS cost: lambda * energy share + mu * load. The energy
// share normalizes by the maximum ON draw so both terms live in [0, 1]
// (coordination overhead can push the first term above 1).
inline double bs_cost(const bs_spec& b, double p_total_w, double rho,
                      double lambda_weight, double mu_weight) {
  double denom = b.p_max_w / b.amp_eff + b.p_base_w;
  return lambda_weight * p_total_w / denom + mu_weight * rho;
}

}  // namespace scnet
