#pragma once

// The discrete-time slot loop: action selection (baseline or learned),
// load-aware association, per-cluster scheduling, load/power/cost
// accounting, learner updates, advertised-load updates, and periodic
// re-clustering.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scnet/association.hpp"
#include "scnet/clustering.hpp"
#include "scnet/common.hpp"
#include "scnet/game.hpp"
#include "scnet/learning.hpp"
#include "scnet/network.hpp"
#include "scnet/scenario.hpp"
#include "scnet/scheduling.hpp"
#include "scnet/similarity.hpp"

namespace scnet {

enum class strategy {
  classical,
  random_onoff,
  learning_noclusters,
  learning_kmeans,
  learning_spectral,
  learning_p2p,
};

inline const std::vector<std::pair<strategy, std::string>>& strategy_names() {
  static const std::vector<std::pair<strategy, std::string>> names = {
      {strategy::classical, "classical"},
      {strategy::random_onoff, "random-onoff"},
      {strategy::learning_noclusters, "learning-noclusters"},
      {strategy::learning_kmeans, "learning-kmeans"},
      {strategy::learning_spectral, "learning-spectral"},
      {strategy::learning_p2p, "learning-p2p"},
  };
  return names;
}

inline std::string to_string(strategy s) {
  for (const auto& [st, name] : strategy_names())
    if (st == s) return name;
  return "?";
}

inline strategy parse_strategy(const std::string& name) {
  for (const auto& [st, n] : strategy_names())
    if (n == name) return st;
  throw std::invalid_argument("unknown strategy: " + name);
}

inline bool is_learning(strategy s) {
  return s == strategy::learning_noclusters || s == strategy::learning_kmeans ||
         s == strategy::learning_spectral || s == strategy::learning_p2p;
}

struct epoch_record {
  long slot = 0;  // slot index at which the partition took effect
  std::string method;
  std::vector<int> labels;  // per BS
  std::vector<int> heads;   // per cluster
  int cluster_count = 0;
  double mean_size = 0.0;
};

struct slot_trace {
  long slot = 0;
  std::vector<int> action_index;     // per cluster (-1 for baselines)
  std::vector<double> utility;       // per cluster
  std::vector<double> rho;           // per BS
  std::vector<double> p_total_w;     // per BS
  std::vector<char> on;              // per BS
};

struct run_metrics {
  long slots = 0;
  long window_start = 0;  // metrics below average slots in [window_start, slots)
  double mean_cost_per_bs = 0.0;
  double mean_power_w_per_bs = 0.0;
  double mean_load_per_bs = 0.0;
  double off_fraction_sbs = 0.0;
  double unserved_fraction = 0.0;
  double overload_fraction = 0.0;   // share of window slots with any overload
  double mean_cluster_count = 0.0;  // over window slots
  double mean_cluster_size = 0.0;
  std::vector<double> bs_mean_power_w;  // per BS over the window
  std::vector<double> bs_mean_load;     // per BS
  std::vector<epoch_record> epochs;
};

class simulation {
 public:
  simulation(network_scenario scenario, strategy strat, std::uint64_t seed)
      : scn_(std::move(scenario)),
        strat_(strat),
        rng_(derive_seed(seed, 1)),
        gains_(gain_matrix(scn_)),
        nb_(build_neighborhood(positions(), scn_.par.eps_d_m)) {
    const int nbs = scn_.num_bs();
    on_.assign(nbs, 1);
    p_tx_.assign(nbs, 0.0);
    rho_.assign(nbs, 0.0);
    overloaded_.assign(nbs, 0);
    rho_hat_.assign(nbs, scn_.par.preferred_load);
    lag_eff_.assign(nbs, 0.0);
    p_max_.resize(nbs);
    static_overhead_.resize(nbs);
    for (int b = 0; b < nbs; ++b) {
      p_max_[b] = scn_.bs[b].p_max_w;
      lag_eff_[b] = scn_.par.preferred_load * p_max_[b];
      static_overhead_[b] =
          overhead_cost(nb_.nb_size[b], scn_.par.eps_d_m, scn_.par.chi_w_per_m);
    }
    rebuild_clusters(0);
  }

  // Runs T slots; metrics are averaged over the final half.
  run_metrics run(long T) {
    run_metrics m;
    m.slots = T;
    m.window_start = T / 2;
    const int nbs = scn_.num_bs();
    const int nsbs = nbs - 1;
    m.bs_mean_power_w.assign(nbs, 0.0);
    m.bs_mean_load.assign(nbs, 0.0);
    long window = T - m.window_start;
    for (long t = 0; t < T; ++t) {
      step();
      if (t < m.window_start) continue;
      double cost_sum = 0.0, power_sum = 0.0, load_sum = 0.0;
      int off_sbs = 0;
      bool any_over = false;
      for (int b = 0; b < nbs; ++b) {
        cost_sum += cost_[b];
        power_sum += p_total_[b];
        load_sum += rho_[b];
        any_over |= (overloaded_[b] != 0);
        if (scn_.bs[b].kind == bs_kind::sbs && !on_[b]) ++off_sbs;
        m.bs_mean_power_w[b] += p_total_[b];
        m.bs_mean_load[b] += rho_[b];
      }
      m.mean_cost_per_bs += cost_sum / nbs;
      m.mean_power_w_per_bs += power_sum / nbs;
      m.mean_load_per_bs += load_sum / nbs;
      if (nsbs > 0) m.off_fraction_sbs += static_cast<double>(off_sbs) / nsbs;
      m.unserved_fraction +=
          scn_.num_ue() ? static_cast<double>(unserved_count_) / scn_.num_ue() : 0.0;
      m.overload_fraction += any_over ? 1.0 : 0.0;
      m.mean_cluster_count += clusters_.cluster_count();
      m.mean_cluster_size += clusters_.mean_size(nbs);
    }
    if (window > 0) {
      double inv = 1.0 / static_cast<double>(window);
      m.mean_cost_per_bs *= inv;
      m.mean_power_w_per_bs *= inv;
      m.mean_load_per_bs *= inv;
      m.off_fraction_sbs *= inv;
      m.unserved_fraction *= inv;
      m.overload_fraction *= inv;
      m.mean_cluster_count *= inv;
      m.mean_cluster_size *= inv;
      for (int b = 0; b < nbs; ++b) {
        m.bs_mean_power_w[b] *= inv;
        m.bs_mean_load[b] *= inv;
      }
    }
    m.epochs = epochs_;
    return m;
  }

  // One slot of the loop.
  void step() {
    const sim_params& par = scn_.par;
    const int nbs = scn_.num_bs();
    const int nue = scn_.num_ue();
    const double noise = scn_.par.noise_w();
    const auto labels = clusters_.labels(nbs);

    // 1. Action selection.
    played_.assign(clusters_.cluster_count(), -1);
    switch (strat_) {
      case strategy::classical:
        for (int b = 0; b < nbs; ++b) {
          on_[b] = 1;
          p_tx_[b] = p_max_[b];
        }
        break;
      case strategy::random_onoff:
        for (int b = 0; b < nbs; ++b) {
          bool keep_on = scn_.bs[b].kind == bs_kind::mbs || uniform01(rng_) < 0.5;
          on_[b] = keep_on ? 1 : 0;
          p_tx_[b] = keep_on ? p_max_[b] : 0.0;
        }
        break;
      default:
        for (int c = 0; c < clusters_.cluster_count(); ++c) {
          const auto& sp = spaces_[c];
          int a = sp.size() > 1 ? sample_index(learners_[c].pi, rng_) : 0;
          played_[c] = a;
          for (std::size_t i = 0; i < sp.members.size(); ++i) {
            int b = sp.members[i];
            on_[b] = sp.actions[a][i].on ? 1 : 0;
            p_tx_[b] = sp.actions[a][i].p_w;
          }
        }
        break;
    }

    // 2. Association against the advertised loads.
    auto assoc = associate_ues(gains_, on_, p_tx_, rho_hat_, par.assoc_load_exponent);

    // 3. Per-cluster scheduling. The serving sets come out of the rounded
    // assignment; interference for a cluster's UE excludes the whole
    // cluster's (lagged) transmissions.
    std::vector<double> tot_int(nue, 0.0);
    for (int u = 0; u < nue; ++u) {
      double s = 0.0;
      for (int b = 0; b < nbs; ++b) s += lag_eff_[b] * gains_[b][u];
      tot_int[u] = s;
    }
    served_rates_.assign(nbs, {});
    unserved_count_ = 0;
    std::vector<double> penalty(clusters_.cluster_count(), 0.0);
    std::vector<std::vector<int>> anchored(clusters_.cluster_count());
    for (int u = 0; u < nue; ++u) {
      if (assoc.anchor[u] < 0) {
        ++unserved_count_;
        int fb = fallback_anchor(gains_, p_max_, rho_hat_, par.assoc_load_exponent, u);
        penalty[labels[fb]] += par.mu_weight;
        continue;
      }
      anchored[labels[assoc.anchor[u]]].push_back(u);
    }
    for (int c = 0; c < clusters_.cluster_count(); ++c) {
      if (anchored[c].empty()) continue;
      const auto& members = clusters_.members[c];
      std::vector<int> rows;
      for (int b : members)
        if (on_[b]) rows.push_back(b);
      // Association anchors only to ON BSs, so rows cannot be empty here.
      std::vector<std::vector<double>> cost(rows.size(),
                                            std::vector<double>(anchored[c].size()));
      std::vector<std::vector<double>> rate = cost;
      for (std::size_t j = 0; j < anchored[c].size(); ++j) {
        int u = anchored[c][j];
        double cluster_int = 0.0;
        for (int b : members) cluster_int += lag_eff_[b] * gains_[b][u];
        double interference = std::max(tot_int[u] - cluster_int, 0.0);
        for (std::size_t r = 0; r < rows.size(); ++r) {
          double rt = ue_rate(p_tx_[rows[r]], gains_[rows[r]][u], interference,
                              noise, par.bandwidth_hz);
          rate[r][j] = rt;
          cost[r][j] = rt > 0.0 ? par.traffic_bps / rt : kUnservableCost;
        }
      }
      auto pick = round_assignment(solve_relaxed(cost));
      for (std::size_t j = 0; j < anchored[c].size(); ++j)
        served_rates_[rows[pick[j]]].push_back(rate[pick[j]][j]);
    }

    // 4.-6. Loads, powers, costs, cluster utilities.
    p_total_.assign(nbs, 0.0);
    cost_.assign(nbs, 0.0);
    utilities_.assign(clusters_.cluster_count(), 0.0);
    for (int b = 0; b < nbs; ++b) {
      auto load = bs_load(par.traffic_bps, served_rates_[b]);
      rho_[b] = on_[b] ? load.rho : 0.0;
      overloaded_[b] = load.overloaded ? 1 : 0;
      bool clustered = clusters_.members[labels[b]].size() >= 2;
      double delta = 0.0;
      if (clustered && (on_[b] || par.overhead_paid_when_off))
        delta = static_overhead_[b];
      p_total_[b] = bs_power(scn_.bs[b], on_[b] != 0, rho_[b], p_tx_[b], delta);
      cost_[b] = bs_cost(scn_.bs[b], p_total_[b], rho_[b], par.lambda_weight,
                         par.mu_weight);
      utilities_[labels[b]] -= cost_[b];
    }
    for (int c = 0; c < clusters_.cluster_count(); ++c)
      utilities_[c] -= penalty[c];

    // 7. Learner updates (learning strategies only).
    if (is_learning(strat_)) {
      for (int c = 0; c < clusters_.cluster_count(); ++c)
        if (spaces_[c].size() > 1)
          update_learner(learners_[c], played_[c], utilities_[c]);
    }

    if (trace_hook_) {
      slot_trace tr;
      tr.slot = t_;
      tr.action_index = played_;
      tr.utility = utilities_;
      tr.rho = rho_;
      tr.p_total_w = p_total_;
      tr.on = on_;
      trace_hook_(tr);
    }

    // 8.-9. Advertised loads and lagged effective powers for the next slot.
    for (int b = 0; b < nbs; ++b) {
      rho_hat_[b] = update_load_estimate(rho_hat_[b], rho_[b], t_ + 1, par.exp_nu);
      lag_eff_[b] = rho_[b] * p_tx_[b];
    }

    ++t_;

    // 10. Periodic re-clustering (learning strategies refresh the partition;
    // baselines keep singletons).
    if (par.cluster_period > 0 && t_ % par.cluster_period == 0)
      rebuild_clusters(t_);
  }

  // --- inspection (tests, tracing, harness) ---
  const network_scenario& scenario() const { return scn_; }
  const cluster_set& clusters() const { return clusters_; }
  const std::vector<action_space>& spaces() const { return spaces_; }
  const std::vector<learner_state>& learners() const { return learners_; }
  const std::vector<double>& advertised_loads() const { return rho_hat_; }
  const std::vector<double>& loads() const { return rho_; }
  const std::vector<double>& powers() const { return p_total_; }
  const std::vector<double>& costs() const { return cost_; }
  const std::vector<double>& utilities() const { return utilities_; }
  const std::vector<char>& on_flags() const { return on_; }
  const std::vector<epoch_record>& epochs() const { return epochs_; }
  long slot() const { return t_; }
  void set_trace_hook(std::function<void(const slot_trace&)> hook) {
    trace_hook_ = std::move(hook);
  }

 private:
  std::vector<vec2> positions() const {
    std::vector<vec2> p;
    for (const auto& b : scn_.bs) p.push_back(b.pos);
    return p;
  }

  void rebuild_clusters(long slot) {
    const int nbs = scn_.num_bs();
    const sim_params& par = scn_.par;
    cluster_set next;
    switch (strat_) {
      case strategy::classical:
      case strategy::random_onoff:
      case strategy::learning_noclusters:
        next = singleton_clusters(nbs, rho_hat_, slot);
        break;
      case strategy::learning_kmeans: {
        std::vector<std::array<double, 3>> emb(nbs);
        for (int b = 0; b < nbs; ++b)
          emb[b] = cluster_embedding(scn_.bs[b].pos, rho_hat_[b], par.theta,
                                     par.sigma_d_m, par.sigma_l);
        int k = par.kmeans_fixed_k;
        if (k < 1) {
          auto g = build_similarity(positions(), rho_hat_, par.eps_d_m,
                                    par.sigma_d_m, par.sigma_l, par.theta);
          k = nbs == 1 ? 1 : eigengap_k(jacobi_eigen(graph_laplacian(g.s)).values);
        }
        next = kmeans_cluster(emb, rho_hat_, std::min(k, nbs), rng_, slot);
        break;
      }
      case strategy::learning_spectral: {
        auto g = build_similarity(positions(), rho_hat_, par.eps_d_m,
                                  par.sigma_d_m, par.sigma_l, par.theta);
        next = spectral_cluster(g.s, rho_hat_, par.kmeans_fixed_k, rng_, slot);
        break;
      }
      case strategy::learning_p2p: {
        auto g = build_similarity(positions(), rho_hat_, par.eps_d_m,
                                  par.sigma_d_m, par.sigma_l, par.theta);
        next = p2p_cluster(g, rho_hat_, par.cmax, par.p2p_rounds, slot);
        break;
      }
    }

    // Rebuild action spaces; clusters with unchanged membership keep their
    // learner (the action list is identical), everything else starts fresh.
    std::vector<action_space> new_spaces;
    std::vector<learner_state> new_learners;
    for (int c = 0; c < next.cluster_count(); ++c) {
      auto sp = build_action_space(next.members[c], scn_.bs, par.power_levels,
                                   par.mbs_controllable);
      learner_state st(sp.size(), par.kappa, par.exp_tau, par.exp_iota,
                       par.exp_eps);
      for (int old = 0; old < clusters_.cluster_count(); ++old)
        if (clusters_.members[old] == next.members[c]) {
          st = learners_[old];
          break;
        }
      new_spaces.push_back(std::move(sp));
      new_learners.push_back(std::move(st));
    }
    clusters_ = std::move(next);
    spaces_ = std::move(new_spaces);
    learners_ = std::move(new_learners);

    epoch_record rec;
    rec.slot = slot;
    rec.method = clusters_.method;
    rec.labels = clusters_.labels(nbs);
    rec.heads = clusters_.head;
    rec.cluster_count = clusters_.cluster_count();
    rec.mean_size = clusters_.mean_size(nbs);
    epochs_.push_back(rec);
  }

  network_scenario scn_;
  strategy strat_;
  rng_t rng_;
  std::vector<std::vector<double>> gains_;
  neighborhood nb_;
  std::vector<double> p_max_;
  std::vector<double> static_overhead_;

  cluster_set clusters_;
  std::vector<action_space> spaces_;
  std::vector<learner_state> learners_;
  std::vector<epoch_record> epochs_;

  std::vector<char> on_;
  std::vector<double> p_tx_;
  std::vector<double> rho_;
  std::vector<char> overloaded_;
  std::vector<double> rho_hat_;
  std::vector<double> lag_eff_;
  std::vector<double> p_total_;
  std::vector<double> cost_;
  std::vector<double> utilities_;
  std::vector<std::vector<double>> served_rates_;
  std::vector<int> played_;
  int unserved_count_ = 0;
  long t_ = 0;
  std::function<void(const slot_trace&)> trace_hook_;
};

}  // namespace scnet
