#pragma once

// Small-instance numerical verification of the learning dynamics' limit
// behavior: stationary softmax distributions over joint actions,
// temperature monotonicity and its derivative identities, coarse
// correlated equilibrium certification, and an empirical convergence probe
// that runs the actual learners on a synthetic game.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "scnet/common.hpp"
#include "scnet/learning.hpp"

namespace scnet {

// Normal-form game over clusters-as-players. Utilities are indexed by
// player and joint-action index (mixed radix, first player most
// significant).
struct finite_game {
  std::vector<int> n_actions;               // per player
  std::vector<std::vector<double>> util;    // util[player][joint]

  int players() const { return static_cast<int>(n_actions.size()); }
  int joint_count() const {
    int c = 1;
    for (int n : n_actions) c *= n;
    return c;
  }
  int joint_index(const std::vector<int>& a) const {
    int idx = 0;
    for (int p = 0; p < players(); ++p) idx = idx * n_actions[p] + a[p];
    return idx;
  }
  std::vector<int> decode(int idx) const {
    std::vector<int> a(players());
    for (int p = players() - 1; p >= 0; --p) {
      a[p] = idx % n_actions[p];
      idx /= n_actions[p];
    }
    return a;
  }
};

inline finite_game random_game(int players, int actions, rng_t& rng,
                               double lo = -1.0, double hi = 0.0) {
  finite_game g;
  g.n_actions.assign(players, actions);
  g.util.assign(players, std::vector<double>(g.joint_count(), 0.0));
  for (auto& row : g.util)
    for (double& u : row) u = lo + (hi - lo) * uniform01(rng);
  return g;
}

// Total (system) utility of each joint action.
inline std::vector<double> system_utilities(const finite_game& g) {
  std::vector<double> s(g.joint_count(), 0.0);
  for (const auto& row : g.util)
    for (int a = 0; a < g.joint_count(); ++a) s[a] += row[a];
  return s;
}

// System regrets: utility of each joint action relative to the best one.
// Any constant shift cancels in the softmax below; anchoring at the maximum
// keeps the values kappa-independent for derivative checks.
inline std::vector<double> system_regrets(const finite_game& g) {
  auto s = system_utilities(g);
  double mx = *std::max_element(s.begin(), s.end());
  for (double& v : s) v -= mx;
  return s;
}

inline std::vector<int> argmax_set(const std::vector<double>& v,
                                   double tol = 1e-9) {
  double mx = *std::max_element(v.begin(), v.end());
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (v[i] >= mx - tol) out.push_back(i);
  return out;
}

// Softmax over regrets at temperature kappa, overflow-safe.
inline std::vector<double> stationary_distribution(
    const std::vector<double>& regrets, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  std::vector<double> x(regrets.size());
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < regrets.size(); ++i) {
    x[i] = kappa * regrets[i];
    mx = std::max(mx, x[i]);
  }
  double sum = 0.0;
  for (double& v : x) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

// Zero-temperature limit: uniform over the argmax set.
inline std::vector<double> limit_distribution(const std::vector<double>& regrets,
                                              double tol = 1e-9) {
  auto best = argmax_set(regrets, tol);
  std::vector<double> pi(regrets.size(), 0.0);
  for (int a : best) pi[a] = 1.0 / best.size();
  return pi;
}

inline double expectation(const std::vector<double>& pi,
                          const std::vector<double>& vals) {
  double e = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) e += pi[i] * vals[i];
  return e;
}

inline double variance(const std::vector<double>& pi,
                       const std::vector<double>& vals) {
  double m = expectation(pi, vals);
  double v = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i)
    v += pi[i] * (vals[i] - m) * (vals[i] - m);
  return v;
}

inline double tv_distance(const std::vector<double>& p,
                          const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

// --------------------------------------------------------------------------
// Temperature monotonicity
// --------------------------------------------------------------------------

struct monotonicity_report {
  bool optimal_mass_monotone = true;   // per-optimum probability nondecreasing
  bool expected_value_monotone = true;  // expected system utility nondecreasing
  double first_violation_kappa = 0.0;
  double worst_drop = 0.0;
};

// Checks along the ascending kappa grid that (i) the stationary probability
// of every optimal joint action never decreases and (ii) the expected
// system utility never decreases. slack absorbs roundoff.
inline monotonicity_report check_kappa_monotonicity(
    const finite_game& g, const std::vector<double>& kappa_grid,
    double slack = 1e-12) {
  auto regrets = system_regrets(g);
  auto best = argmax_set(regrets);
  monotonicity_report rep;
  std::vector<double> prev_pi;
  double prev_e = -std::numeric_limits<double>::infinity();
  for (double kappa : kappa_grid) {
    auto pi = stationary_distribution(regrets, kappa);
    double e = expectation(pi, regrets);
    if (!prev_pi.empty()) {
      for (int a : best)
        if (pi[a] < prev_pi[a] - slack) {
          rep.optimal_mass_monotone = false;
          rep.first_violation_kappa = kappa;
          rep.worst_drop = std::max(rep.worst_drop, prev_pi[a] - pi[a]);
        }
      if (e < prev_e - slack) {
        rep.expected_value_monotone = false;
        rep.first_violation_kappa = kappa;
        rep.worst_drop = std::max(rep.worst_drop, prev_e - e);
      }
    }
    prev_pi = pi;
    prev_e = e;
  }
  return rep;
}

// Analytic derivative of the stationary probability with respect to kappa:
// d pi_a / d kappa = pi_a * (regret_a - E_pi[regret]).
inline std::vector<double> stationary_derivative(
    const std::vector<double>& regrets, double kappa) {
  auto pi = stationary_distribution(regrets, kappa);
  double e = expectation(pi, regrets);
  std::vector<double> d(pi.size());
  for (std::size_t a = 0; a < pi.size(); ++a) d[a] = pi[a] * (regrets[a] - e);
  return d;
}

// Smallest finite temperature whose stationary expected system utility
// clears the threshold; the map is monotone, so doubling + bisection works.
// Requires threshold < the optimum value. Returns the found kappa.
inline double temperature_for_threshold(const finite_game& g,
                                        double threshold,
                                        double tol = 1e-6) {
  auto regrets = system_regrets(g);
  double best = *std::max_element(regrets.begin(), regrets.end());
  if (!(threshold < best))
    throw std::invalid_argument("threshold must lie below the optimal value");
  double lo = 1e-6, hi = 1.0;
  auto value = [&](double kappa) {
    return expectation(stationary_distribution(regrets, kappa), regrets);
  };
  int guard = 0;
  while (value(hi) <= threshold) {
    hi *= 2.0;
    if (++guard > 200)
      throw numerical_failure("no finite temperature reaches the threshold",
                              value(hi));
  }
  while (hi - lo > tol * std::max(1.0, hi)) {
    double mid = 0.5 * (lo + hi);
    if (value(mid) > threshold)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// --------------------------------------------------------------------------
// Coarse correlated equilibrium certification
// --------------------------------------------------------------------------

struct cce_result {
  bool holds = false;
  double worst_deviation = 0.0;
};

// For every player and every pure deviation, compares the deviation payoff
// against the joint distribution's marginal over the others with the payoff
// under the distribution itself. Holds iff no deviation gains more than
// epsilon.
inline cce_result check_epsilon_cce(const finite_game& g,
                                    const std::vector<double>& pi,
                                    double epsilon) {
  cce_result res;
  res.worst_deviation = -std::numeric_limits<double>::infinity();
  const int total = g.joint_count();
  for (int p = 0; p < g.players(); ++p) {
    double base = expectation(pi, g.util[p]);
    for (int dev = 0; dev < g.n_actions[p]; ++dev) {
      double dev_value = 0.0;
      for (int a = 0; a < total; ++a) {
        auto profile = g.decode(a);
        profile[p] = dev;
        dev_value += pi[a] * g.util[p][g.joint_index(profile)];
      }
      res.worst_deviation = std::max(res.worst_deviation, dev_value - base);
    }
  }
  res.holds = res.worst_deviation <= epsilon;
  return res;
}

// --------------------------------------------------------------------------
// Empirical convergence probe
// --------------------------------------------------------------------------

struct empirical_result {
  std::vector<double> empirical;   // joint-action frequencies, last half
  std::vector<double> stationary;  // softmax of exact system regrets
  double tv = 0.0;
};

// Runs the per-player learners on the game for T slots (utilities are exact
// functions of the joint action, so ensemble quantities are well defined),
// then compares the joint empirical distribution over the last T/2 slots
// against the stationary softmax at the same temperature.
inline empirical_result empirical_vs_stationary(const finite_game& g,
                                                double kappa, long T,
                                                rng_t& rng,
                                                double exp_tau = 0.6,
                                                double exp_iota = 0.7,
                                                double exp_eps = 0.8) {
  const int np = g.players();
  std::vector<learner_state> learners;
  for (int p = 0; p < np; ++p)
    learners.emplace_back(g.n_actions[p], kappa, exp_tau, exp_iota, exp_eps);
  std::vector<long> counts(g.joint_count(), 0);
  std::vector<int> choice(np, 0);
  long window_start = T / 2;
  for (long t = 0; t < T; ++t) {
    for (int p = 0; p < np; ++p) choice[p] = sample_index(learners[p].pi, rng);
    int joint = g.joint_index(choice);
    if (t >= window_start) ++counts[joint];
    for (int p = 0; p < np; ++p)
      update_learner(learners[p], choice[p], g.util[p][joint]);
  }
  empirical_result res;
  res.empirical.assign(g.joint_count(), 0.0);
  long denom = T - window_start;
  for (int a = 0; a < g.joint_count(); ++a)
    res.empirical[a] = static_cast<double>(counts[a]) / denom;
  res.stationary = stationary_distribution(system_regrets(g), kappa);
  res.tv = tv_distance(res.empirical, res.stationary);
  return res;
}

}  // namespace scnet
