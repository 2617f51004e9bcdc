#pragma once

// Intra-cluster scheduling: anchored UEs are offloaded among the ON members
// of their cluster by a relaxed assignment problem (per-UE decoupled LP)
// followed by deterministic rounding, plus the coordination overhead term.

#include <algorithm>
#include <limits>
#include <vector>

#include "scnet/common.hpp"

namespace scnet {

// Cost used for a (member, UE) pair whose rate is zero/invalid: keeps the
// matrix finite while making such picks strictly dominated.
inline constexpr double kUnservableCost = 1000.0;

struct schedule_problem {
  std::vector<int> rows;  // ON member BS ids, ascending
  std::vector<int> ues;   // anchored UE ids
  // cost[r][u]: incremental load if rows[r] serves ues[u].
  std::vector<std::vector<double>> cost;
};

// Relaxation optimum: the constraint matrix decouples per UE, so each UE
// column independently puts its mass on the minimum-cost rows (mass split
// equally among exact ties). Returns a rows x ues fractional matrix.
inline std::vector<std::vector<double>> solve_relaxed(
    const std::vector<std::vector<double>>& cost) {
  const int nr = static_cast<int>(cost.size());
  const int nu = nr ? static_cast<int>(cost[0].size()) : 0;
  std::vector<std::vector<double>> z(nr, std::vector<double>(nu, 0.0));
  for (int u = 0; u < nu; ++u) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < nr; ++r) best = std::min(best, cost[r][u]);
    int ties = 0;
    for (int r = 0; r < nr; ++r)
      if (cost[r][u] == best) ++ties;
    for (int r = 0; r < nr; ++r)
      if (cost[r][u] == best) z[r][u] = 1.0 / ties;
  }
  return z;
}

// Rounding: each UE goes to its largest fractional share, ties to the
// lowest row index (= lowest BS id, rows are kept ascending).
inline std::vector<int> round_assignment(
    const std::vector<std::vector<double>>& z) {
  const int nr = static_cast<int>(z.size());
  const int nu = nr ? static_cast<int>(z[0].size()) : 0;
  std::vector<int> pick(nu, -1);
  for (int u = 0; u < nu; ++u) {
    int best = 0;
    for (int r = 1; r < nr; ++r)
      if (z[r][u] > z[best][u]) best = r;
    pick[u] = best;
  }
  return pick;
}

inline double relaxed_objective(const std::vector<std::vector<double>>& cost,
                                const std::vector<std::vector<double>>& z) {
  double s = 0.0;
  for (std::size_t r = 0; r < cost.size(); ++r)
    for (std::size_t u = 0; u < cost[r].size(); ++u) s += cost[r][u] * z[r][u];
  return s;
}

inline double assignment_objective(const std::vector<std::vector<double>>& cost,
                                   const std::vector<int>& pick) {
  double s = 0.0;
  for (std::size_t u = 0; u < pick.size(); ++u) s += cost[pick[u]][u];
  return s;
}

// Per-BS coordination power for a clustered BS: per-meter sensitivity times
// the neighborhood range, once per neighbor (the BS itself excluded).
inline double overhead_cost(int neighborhood_size, double eps_d,
                            double chi_w_per_m) {
  if (neighborhood_size < 1)
    throw std::invalid_argument("neighborhood includes the BS itself");
  return chi_w_per_m * (neighborhood_size - 1) * eps_d;
}

}  // namespace scnet
