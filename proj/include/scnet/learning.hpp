#pragma once

// Per-cluster no-regret learning: joint ON/OFF-and-power action spaces,
// Boltzmann-Gibbs smoothing of positive regrets, inverse-CDF action
// sampling, and the three-timescale estimate updates.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "scnet/common.hpp"
#include "scnet/scenario.hpp"

namespace scnet {

struct bs_action {
  double p_w = 0.0;  // transmit power; 0 when off
  bool on = false;
};

// Ordered list of joint actions for one cluster. Members are sorted by id;
// non-controllable members (the macro BS by default) stay ON at maximum
// power in every action.
struct action_space {
  std::vector<int> members;              // BS ids ascending
  std::vector<char> controllable;        // aligned with members
  std::vector<std::vector<bs_action>> actions;  // [action][member]

  int size() const { return static_cast<int>(actions.size()); }
};

namespace detail {

// Per-BS levels: index 0 = OFF, then L ascending power fractions up to max.
inline std::vector<bs_action> bs_levels(double p_max_w, int power_levels) {
  std::vector<bs_action> lv;
  lv.push_back({0.0, false});
  for (int l = 1; l <= power_levels; ++l)
    lv.push_back({p_max_w * l / power_levels, true});
  return lv;
}

}  // namespace detail

// Enumerates the joint action list. Small clusters get the full grid
// (L+1)^controllable in lexicographic order (first member most significant,
// level 0 = OFF first). Clusters with more than 6 controllable members fall
// back to ON/OFF-only actions with at most 3 members OFF at once, truncated
// to 64 actions (sizes that large only arise under the centralized
// clusterers; this keeps the learner's memory bounded).
inline action_space build_action_space(const std::vector<int>& member_ids,
                                       const std::vector<bs_spec>& bs,
                                       int power_levels,
                                       bool mbs_controllable) {
  action_space sp;
  sp.members = member_ids;
  std::sort(sp.members.begin(), sp.members.end());
  std::vector<int> ctl_idx;
  for (std::size_t i = 0; i < sp.members.size(); ++i) {
    const bs_spec& b = bs[sp.members[i]];
    bool ctl = (b.kind == bs_kind::sbs) || mbs_controllable;
    sp.controllable.push_back(ctl);
    if (ctl) ctl_idx.push_back(static_cast<int>(i));
  }
  const int m = static_cast<int>(ctl_idx.size());
  std::vector<bs_action> fixed(sp.members.size());
  for (std::size_t i = 0; i < sp.members.size(); ++i)
    fixed[i] = {bs[sp.members[i]].p_max_w, true};

  if (m <= 6) {
    int effective_levels = (m > 4) ? 1 : power_levels;
    std::vector<std::vector<bs_action>> levels;
    for (int idx : ctl_idx)
      levels.push_back(detail::bs_levels(bs[sp.members[idx]].p_max_w,
                                         effective_levels));
    std::vector<int> digit(m, 0);
    for (;;) {
      auto act = fixed;
      for (int i = 0; i < m; ++i) act[ctl_idx[i]] = levels[i][digit[i]];
      sp.actions.push_back(act);
      int pos = m - 1;
      while (pos >= 0) {
        if (++digit[pos] < static_cast<int>(levels[pos].size())) break;
        digit[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
      if (m == 0) break;
    }
    if (m == 0 && sp.actions.empty()) sp.actions.push_back(fixed);
  } else {
    constexpr int kMaxActions = 64;
    constexpr int kMaxOff = 3;
    // Subsets of OFF members by increasing size, lexicographic within size.
    std::vector<std::vector<int>> offsets{{}};
    for (int size = 1; size <= kMaxOff; ++size) {
      std::vector<int> comb(size);
      std::iota(comb.begin(), comb.end(), 0);
      for (;;) {
        offsets.push_back(comb);
        int i = size - 1;
        while (i >= 0 && comb[i] == m - size + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
    for (const auto& off : offsets) {
      if (static_cast<int>(sp.actions.size()) >= kMaxActions) break;
      auto act = fixed;
      for (int i : off) act[ctl_idx[i]] = {0.0, false};
      sp.actions.push_back(act);
    }
  }
  return sp;
}

// Index of the everyone-ON-at-maximum-power action (present in every
// enumeration the builder produces).
inline int all_on_index(const action_space& sp) {
  const std::size_t m = sp.members.size();
  std::vector<double> peak(m, 0.0);
  for (const auto& act : sp.actions)
    for (std::size_t i = 0; i < m; ++i) peak[i] = std::max(peak[i], act[i].p_w);
  for (int a = 0; a < sp.size(); ++a) {
    bool match = true;
    for (std::size_t i = 0; i < m; ++i)
      if (!sp.actions[a][i].on || sp.actions[a][i].p_w != peak[i]) {
        match = false;
        break;
      }
    if (match) return a;
  }
  throw invalid_state("action space lacks an all-ON action");
}

// Boltzmann-Gibbs distribution over positive-part regrets, overflow-safe.
inline std::vector<double> bg_distribution(const std::vector<double>& r_hat,
                                           double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  std::vector<double> x(r_hat.size());
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < r_hat.size(); ++j) {
    x[j] = kappa * std::max(r_hat[j], 0.0);
    mx = std::max(mx, x[j]);
  }
  double sum = 0.0;
  for (double& v : x) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

// Inverse-CDF categorical sample.
inline int sample_index(const std::vector<double>& pi, rng_t& rng) {
  double u = uniform01(rng);
  double acc = 0.0;
  for (std::size_t j = 0; j < pi.size(); ++j) {
    acc += pi[j];
    if (u < acc) return static_cast<int>(j);
  }
  return static_cast<int>(pi.size()) - 1;
}

// One learner per cluster epoch. Time starts at 0; the first update uses
// rate 1 on every estimate. u_prev seeds at 0 (utilities are <= 0).
struct learner_state {
  std::vector<double> u_hat;  // per-action utility estimates
  std::vector<double> r_hat;  // per-action regret estimates
  std::vector<double> pi;     // mixed strategy
  double kappa = 10.0;
  double exp_tau = 0.6, exp_iota = 0.7, exp_eps = 0.8;
  long t = 0;
  double u_prev = 0.0;

  learner_state() = default;
  learner_state(int n_actions, double kappa_, double e_tau, double e_iota,
                double e_eps)
      : u_hat(n_actions, 0.0),
        r_hat(n_actions, 0.0),
        pi(n_actions, 1.0 / n_actions),
        kappa(kappa_),
        exp_tau(e_tau),
        exp_iota(e_iota),
        exp_eps(e_eps) {}
};

// Three-timescale update, executed once per slot with the realized utility
// of the played action. Order matters: the strategy moves toward the
// Boltzmann-Gibbs image of the *previous* regrets, the regrets blend the
// *previous* utility estimates against the *previous* realized utility, and
// only then does the utility estimate of the played action absorb u(t).
inline void update_learner(learner_state& st, int played, double u_t) {
  ++st.t;
  double td = static_cast<double>(st.t);
  double tau = 1.0 / std::pow(td, st.exp_tau);
  double iota = 1.0 / std::pow(td, st.exp_iota);
  double eps = 1.0 / std::pow(td, st.exp_eps);
  auto g = bg_distribution(st.r_hat, st.kappa);
  for (std::size_t j = 0; j < st.pi.size(); ++j)
    st.pi[j] += eps * (g[j] - st.pi[j]);
  for (std::size_t j = 0; j < st.r_hat.size(); ++j)
    st.r_hat[j] += iota * (st.u_hat[j] - st.u_prev - st.r_hat[j]);
  st.u_hat[played] += tau * (u_t - st.u_hat[played]);
  st.u_prev = u_t;
}

}  // namespace scnet
