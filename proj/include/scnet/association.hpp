#pragma once

// Load-aware UE association and the advertised-load estimator.

#include <cmath>
#include <vector>

#include "scnet/common.hpp"

namespace scnet {

struct association_result {
  std::vector<int> anchor;  // per UE: serving BS id, or -1 if nothing is ON
};

// Each UE picks argmax_b (1 - advertised_load_b)^n * received_power_b among
// ON BSs; ties resolve to the lowest BS id. OFF BSs are never chosen while
// any ON BS exists; with no ON BS the UE is unserved (-1).
inline association_result associate_ues(
    const std::vector<std::vector<double>>& gains,  // [bs][ue]
    const std::vector<char>& on,                    // per BS
    const std::vector<double>& tx_power_w,          // per BS, current slot
    const std::vector<double>& advertised_load,     // per BS, in [0,1]
    double load_exponent) {
  const int nbs = static_cast<int>(gains.size());
  const int nue = nbs > 0 ? static_cast<int>(gains[0].size()) : 0;
  association_result res;
  res.anchor.assign(nue, -1);
  std::vector<double> weight(nbs, 0.0);
  for (int b = 0; b < nbs; ++b)
    weight[b] = std::pow(1.0 - advertised_load[b], load_exponent);
  for (int u = 0; u < nue; ++u) {
    int best = -1;
    double best_score = -1.0;
    for (int b = 0; b < nbs; ++b) {
      if (!on[b]) continue;
      double score = weight[b] * tx_power_w[b] * gains[b][u];
      if (score > best_score) {
        best_score = score;
        best = b;
      }
    }
    res.anchor[u] = best;
  }
  return res;
}

// The BS every UE would pick if all BSs were ON at maximum power; used to
// attribute unserved-UE penalties when everything a UE can hear is OFF.
inline int fallback_anchor(const std::vector<std::vector<double>>& gains,
                           const std::vector<double>& p_max_w,
                           const std::vector<double>& advertised_load,
                           double load_exponent, int ue) {
  int best = 0;
  double best_score = -1.0;
  for (int b = 0; b < static_cast<int>(gains.size()); ++b) {
    double score = std::pow(1.0 - advertised_load[b], load_exponent) *
                   p_max_w[b] * gains[b][ue];
    if (score > best_score) {
      best_score = score;
      best = b;
    }
  }
  return best;
}

// Advertised-load recursion: estimate(t) blends the previous slot's actual
// load with the previous estimate, with a decaying gain 1/t^exponent.
// t >= 1; t = 1 returns the actual load (full replacement).
inline double update_load_estimate(double previous_estimate,
                                   double previous_actual_load, long t,
                                   double exponent) {
  if (t < 1) throw std::invalid_argument("estimator time index starts at 1");
  double gain = 1.0 / std::pow(static_cast<double>(t), exponent);
  return gain * previous_actual_load + (1.0 - gain) * previous_estimate;
}

}  // namespace scnet
