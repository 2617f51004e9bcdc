// End-to-end acceptance battery. Each numbered check prints one PASS/FAIL
// line with the measured quantity and its limit; the exit code is the number
// of failures. The statistical checks (08-10) share one batch of long
// simulation runs at the default desk-scale parameters.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "../tests/oracles.hpp"
#include "scnet/scnet.hpp"

namespace {

using scnet::rng_t;

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

struct outcome {
  bool pass = false;
  std::string detail;
};

scnet::vec2 random_point(double radius, rng_t& rng) {
  double r = radius * std::sqrt(scnet::uniform01(rng));
  double phi = 2.0 * M_PI * scnet::uniform01(rng);
  return {r * std::cos(phi), r * std::sin(phi)};
}

// Two players, two actions each; every player's payoff depends only on its
// own action and improves by `gap` when it plays action 1. Separable, so the
// per-player learning fixed points compose into the joint softmax.
scnet::finite_game dominant_pair_game(double gap) {
  scnet::finite_game g;
  g.n_actions = {2, 2};
  g.util.assign(2, std::vector<double>(4, 0.0));
  for (int joint = 0; joint < 4; ++joint) {
    auto a = g.decode(joint);
    for (int p = 0; p < 2; ++p) g.util[p][joint] = -2.0 * gap + gap * a[p];
  }
  return g;
}

// ---------------------------------------------------------------------------
// 01: the joint edge similarity equals the Gaussian of the signed squared
// distance between the 3-coordinate embeddings, to near machine precision.
// ---------------------------------------------------------------------------
outcome check_embedding_identity() {
  rng_t rng(scnet::derive_seed(1001, 0));
  double worst = 0.0;
  auto start = std::chrono::steady_clock::now();
  for (int inst = 0; inst < 100; ++inst) {
    const int n = 10;
    std::vector<scnet::vec2> pos;
    std::vector<double> loads;
    for (int i = 0; i < n; ++i) {
      pos.push_back(random_point(500.0, rng));
      loads.push_back(scnet::uniform01(rng));
    }
    double eps_d = 150.0 + 450.0 * scnet::uniform01(rng);
    double sigma_d = 100.0 + 300.0 * scnet::uniform01(rng);
    double sigma_l = 0.2 + 0.8 * scnet::uniform01(rng);
    double theta = scnet::uniform01(rng);
    auto g = scnet::build_similarity(pos, loads, eps_d, sigma_d, sigma_l, theta);
    std::vector<std::array<double, 3>> emb;
    for (int i = 0; i < n; ++i)
      emb.push_back(
          scnet::cluster_embedding(pos[i], loads[i], theta, sigma_d, sigma_l));
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (!g.nb.adj[a][b]) continue;
        double direct = g.s[a][b];
        double via = scnet::signed_embedding_similarity(emb[a], emb[b]);
        worst = std::max(worst, std::abs(direct - via) / direct);
      }
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return {worst < 1e-12 && secs < 1.0,
          fmt("max rel err %.2e (limit 1e-12), %.2f s (limit 1 s)", worst, secs)};
}

// ---------------------------------------------------------------------------
// 02: LP-relaxed scheduling plus rounding reaches the exhaustive assignment
// optimum on every instance up to 4 rows x 8 columns.
// ---------------------------------------------------------------------------
outcome check_schedule_optimality() {
  rng_t rng(scnet::derive_seed(1002, 0));
  double worst = 0.0;
  auto start = std::chrono::steady_clock::now();
  for (int inst = 0; inst < 200; ++inst) {
    int nr = 1 + inst % 4;
    int nu = 1 + inst % 8;
    std::vector<std::vector<double>> cost(nr, std::vector<double>(nu, 0.0));
    for (auto& row : cost)
      for (double& c : row) {
        c = 10.0 * scnet::uniform01(rng);
        if (inst % 3 == 0) c = std::round(4.0 * c) / 4.0;  // force exact ties
      }
    auto pick = scnet::round_assignment(scnet::solve_relaxed(cost));
    double got = scnet::assignment_objective(cost, pick);
    double opt = oracle::best_assignment_cost(cost);
    worst = std::max(worst, std::abs(got - opt));
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return {worst <= 1e-9 && secs < 10.0,
          fmt("max gap to exhaustive optimum %.2e (limit 1e-9), %.2f s", worst,
              secs)};
}

// ---------------------------------------------------------------------------
// 03: planted well-separated geometry is recovered exactly: the eigengap
// picks k = 3, the spectral partition equals the planted one on all 50
// seeds, and the Jacobi spectrum matches an inertia-bisection cross-check.
// ---------------------------------------------------------------------------
outcome check_cluster_recovery() {
  const std::array<scnet::vec2, 3> centers{
      scnet::vec2{0.0, 0.0}, scnet::vec2{400.0, 0.0},
      scnet::vec2{-200.0, 346.410161513775}};
  const std::array<int, 3> sizes{3, 3, 4};
  int recovered = 0, k_right = 0;
  double worst_eig = 0.0;
  for (int seed = 1; seed <= 50; ++seed) {
    rng_t rng(scnet::derive_seed(2000 + seed, 0));
    std::vector<scnet::vec2> pos;
    std::vector<int> planted;
    for (int gidx = 0; gidx < 3; ++gidx)
      for (int i = 0; i < sizes[gidx]; ++i) {
        auto j = random_point(40.0, rng);
        pos.push_back({centers[gidx].x + j.x, centers[gidx].y + j.y});
        planted.push_back(gidx);
      }
    // Shuffle ids so groups are not contiguous.
    for (int i = static_cast<int>(pos.size()) - 1; i > 0; --i) {
      int j = static_cast<int>(scnet::uniform01(rng) * (i + 1));
      std::swap(pos[i], pos[j]);
      std::swap(planted[i], planted[j]);
    }
    std::vector<double> loads(pos.size(), 0.5);
    auto g = scnet::build_similarity(pos, loads, 250.0, 250.0, 0.5, 0.5);
    auto lap = scnet::graph_laplacian(g.s);
    auto eig = scnet::jacobi_eigen(lap);
    auto cross = oracle::symmetric_eigenvalues(lap);
    for (std::size_t i = 0; i < cross.size(); ++i)
      worst_eig = std::max(worst_eig, std::abs(eig.values[i] - cross[i]));
    if (scnet::eigengap_k(eig.values) == 3) ++k_right;
    auto cs = scnet::spectral_cluster(g.s, loads, 0, rng, 0);
    // Compare as partitions: each planted group must appear verbatim.
    std::vector<std::vector<int>> want(3);
    for (std::size_t i = 0; i < planted.size(); ++i)
      want[planted[i]].push_back(static_cast<int>(i));
    auto got = cs.members;
    for (auto& m : got) std::sort(m.begin(), m.end());
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want == got) ++recovered;
  }
  return {recovered == 50 && k_right == 50 && worst_eig <= 1e-8,
          fmt("recovered %d/50, eigengap k=3 on %d/50, max eigenvalue dev "
              "%.2e (limit 1e-8)",
              recovered, k_right, worst_eig)};
}

// ---------------------------------------------------------------------------
// 04: with two optimal joint actions one regret unit above the rest, the
// kappa = 1e4 stationary distribution concentrates on them, split evenly.
// ---------------------------------------------------------------------------
outcome check_limit_concentration() {
  scnet::finite_game g;
  g.n_actions = {2, 2};
  g.util = {{0.0, -0.5, -0.5, 0.0}, {0.0, -0.5, -0.5, 0.0}};
  auto pi = scnet::stationary_distribution(scnet::system_regrets(g), 1e4);
  double mass = pi[0] + pi[3];
  bool pass = mass >= 0.999 && std::abs(pi[0] - 0.5) <= 1e-3 &&
              std::abs(pi[3] - 0.5) <= 1e-3;
  return {pass, fmt("optimal mass %.6f (limit 0.999), split %.4f / %.4f "
                    "(0.5 +- 1e-3)",
                    mass, pi[0], pi[3])};
}

// ---------------------------------------------------------------------------
// 05: across 20 random games, the stationary optimum mass and expected
// system value are nondecreasing in temperature, and the analytic
// derivatives match central finite differences.
// ---------------------------------------------------------------------------
outcome check_temperature_response() {
  rng_t rng(scnet::derive_seed(1005, 0));
  const std::vector<double> grid{0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0};
  int violations = 0;
  double worst_fd = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    auto g = scnet::random_game(2 + trial % 2, 2 + trial % 3, rng);
    auto rep = scnet::check_kappa_monotonicity(g, grid);
    if (!rep.optimal_mass_monotone || !rep.expected_value_monotone)
      ++violations;
    auto regrets = scnet::system_regrets(g);
    for (double kappa : {0.5, 5.0}) {
      double h = 1e-6 * kappa;
      auto lo = scnet::stationary_distribution(regrets, kappa - h);
      auto hi = scnet::stationary_distribution(regrets, kappa + h);
      auto analytic = scnet::stationary_derivative(regrets, kappa);
      for (std::size_t a = 0; a < analytic.size(); ++a) {
        double fd = (hi[a] - lo[a]) / (2.0 * h);
        worst_fd = std::max(worst_fd, std::abs(analytic[a] - fd) /
                                          std::max(1.0, std::abs(analytic[a])));
      }
      double de_fd = (scnet::expectation(hi, regrets) -
                      scnet::expectation(lo, regrets)) /
                     (2.0 * h);
      auto pi = scnet::stationary_distribution(regrets, kappa);
      double de = scnet::variance(pi, regrets);
      worst_fd = std::max(worst_fd,
                          std::abs(de - de_fd) / std::max(1.0, std::abs(de)));
    }
  }
  return {violations == 0 && worst_fd <= 1e-6,
          fmt("monotonicity violations %d/20, worst derivative err %.2e "
              "(limit 1e-6)",
              violations, worst_fd)};
}

// Shared between 06 and 07.
scnet::empirical_result g_learned;
scnet::finite_game g_pair_game;

// ---------------------------------------------------------------------------
// 06: two independent learners on a two-action game track the stationary
// joint distribution: total variation under 0.05 after 2e5 slots.
// ---------------------------------------------------------------------------
outcome check_learning_convergence() {
  g_pair_game = dominant_pair_game(0.01);
  rng_t rng(scnet::derive_seed(42, 6));
  g_learned = scnet::empirical_vs_stationary(g_pair_game, 10.0, 200000, rng);
  return {g_learned.tv < 0.05,
          fmt("TV(empirical, stationary) = %.4f (limit 0.05)", g_learned.tv)};
}

// ---------------------------------------------------------------------------
// 07: the learned joint distribution is an epsilon-coarse correlated
// equilibrium for epsilon = stationary deviation + 2 * TV * utility range,
// and the zero-temperature limit of the dominant-action game is an exact one.
// ---------------------------------------------------------------------------
outcome check_equilibrium_gap() {
  const auto& g = g_pair_game;
  double u_min = 1e300, u_max = -1e300;
  for (const auto& row : g.util)
    for (double u : row) {
      u_min = std::min(u_min, u);
      u_max = std::max(u_max, u);
    }
  double range = u_max - u_min;
  double dev_stat =
      scnet::check_epsilon_cce(g, g_learned.stationary, 1.0).worst_deviation;
  double bound = dev_stat + 2.0 * g_learned.tv * range + 1e-12;
  auto emp = scnet::check_epsilon_cce(g, g_learned.empirical, bound);
  auto limit = scnet::limit_distribution(scnet::system_regrets(g));
  auto lim = scnet::check_epsilon_cce(g, limit, 1e-12);
  return {emp.holds && lim.holds,
          fmt("learned deviation %.2e <= bound %.2e; limit deviation %.2e "
              "(exact equilibrium)",
              emp.worst_deviation, bound, lim.worst_deviation)};
}

// ---------------------------------------------------------------------------
// Shared simulation batch for 08-10: default desk-scale network, T = 5e4,
// seeds 1..20.
// ---------------------------------------------------------------------------
struct stat {
  double mean = 0.0, ci = 0.0;
};

stat mean_ci(const std::vector<double>& xs) {
  return {scnet::mean_of(xs), scnet::ci95_halfwidth(xs)};
}

struct sim_batch {
  bool ran = false;
  bool all_ok = true;
  // metrics[strategy][seed-1], chi = 0
  std::map<scnet::strategy, std::vector<scnet::run_metrics>> base;
  // spectral and singleton-learning runs at chi = 3e-3 and 6e-3
  std::map<double, std::vector<scnet::run_metrics>> spectral_chi, singles_chi;
};
sim_batch g_batch;

const long kBatchSlots = 50000;
const int kBatchSeeds = 20;

std::vector<scnet::run_metrics> run_block(scnet::strategy st, double chi) {
  scnet::sim_params par;
  par.chi_w_per_m = chi;
  std::vector<scnet::run_request> reqs;
  for (int seed = 1; seed <= kBatchSeeds; ++seed)
    reqs.push_back({par, st, kBatchSlots, static_cast<std::uint64_t>(seed)});
  unsigned hc = std::thread::hardware_concurrency();
  auto recs = scnet::run_all(reqs, hc ? static_cast<int>(hc) : 1);
  std::vector<scnet::run_metrics> out;
  for (auto& r : recs) {
    if (!r.ok) {
      g_batch.all_ok = false;
      std::fprintf(stderr, "  run failed: %s\n", r.error.c_str());
    }
    out.push_back(std::move(r.metrics));
  }
  std::fprintf(stderr, "  batch: %-20s chi=%g done\n",
               scnet::to_string(st).c_str(), chi);
  return out;
}

void ensure_batch() {
  if (g_batch.ran) return;
  g_batch.ran = true;
  using s = scnet::strategy;
  for (auto st : {s::classical, s::random_onoff, s::learning_noclusters,
                  s::learning_kmeans, s::learning_spectral, s::learning_p2p})
    g_batch.base[st] = run_block(st, 0.0);
  for (double chi : {3e-3, 6e-3}) {
    g_batch.spectral_chi[chi] = run_block(s::learning_spectral, chi);
    g_batch.singles_chi[chi] = run_block(s::learning_noclusters, chi);
  }
}

std::vector<double> pluck_cost(const std::vector<scnet::run_metrics>& ms) {
  std::vector<double> xs;
  for (const auto& m : ms) xs.push_back(m.mean_cost_per_bs);
  return xs;
}

// ---------------------------------------------------------------------------
// 08: mean cost per BS orders classical > random switching > every learning
// variant, with non-overlapping 95% confidence intervals over 20 seeds.
// ---------------------------------------------------------------------------
outcome check_strategy_ordering() {
  ensure_batch();
  using s = scnet::strategy;
  auto cls = mean_ci(pluck_cost(g_batch.base[s::classical]));
  auto rnd = mean_ci(pluck_cost(g_batch.base[s::random_onoff]));
  bool pass = g_batch.all_ok && (cls.mean - cls.ci > rnd.mean + rnd.ci);
  double worst_learn = -1e300;
  for (auto st : {s::learning_noclusters, s::learning_kmeans,
                  s::learning_spectral, s::learning_p2p}) {
    auto ln = mean_ci(pluck_cost(g_batch.base[st]));
    worst_learn = std::max(worst_learn, ln.mean + ln.ci);
    if (!(rnd.mean - rnd.ci > ln.mean + ln.ci)) pass = false;
  }
  return {pass, fmt("cost/BS: classical %.5f+-%.5f > random %.5f+-%.5f > "
                    "learning (max upper %.5f)",
                    cls.mean, cls.ci, rnd.mean, rnd.ci, worst_learn)};
}

// ---------------------------------------------------------------------------
// 09: learning variants switch off at least 30% of small cells on average,
// and clustered learning reaches at least the singleton-learning OFF share
// in at least 16 of 20 seeds.
// ---------------------------------------------------------------------------
outcome check_sleep_activity() {
  ensure_batch();
  using s = scnet::strategy;
  bool pass = g_batch.all_ok;
  double min_off = 1e300;
  for (auto st : {s::learning_noclusters, s::learning_kmeans,
                  s::learning_spectral, s::learning_p2p}) {
    std::vector<double> xs;
    for (const auto& m : g_batch.base[st]) xs.push_back(m.off_fraction_sbs);
    double mean = scnet::mean_of(xs);
    min_off = std::min(min_off, mean);
    if (mean < 0.30) pass = false;
  }
  int wins = 0;
  for (int i = 0; i < kBatchSeeds; ++i) {
    double clustered = (g_batch.base[s::learning_kmeans][i].off_fraction_sbs +
                        g_batch.base[s::learning_spectral][i].off_fraction_sbs +
                        g_batch.base[s::learning_p2p][i].off_fraction_sbs) /
                       3.0;
    if (clustered >= g_batch.base[s::learning_noclusters][i].off_fraction_sbs)
      ++wins;
  }
  if (wins < 16) pass = false;
  return {pass, fmt("min mean OFF share %.3f (limit 0.30); clustered >= "
                    "singleton in %d/20 seeds (limit 16)",
                    min_off, wins)};
}

// ---------------------------------------------------------------------------
// 10: the mean cost of spectral learning is nondecreasing in the
// coordination price chi over {0, 3e-3, 6e-3}, while singleton learning is
// exactly chi-invariant.
// ---------------------------------------------------------------------------
outcome check_overhead_response() {
  ensure_batch();
  using s = scnet::strategy;
  double m0 = scnet::mean_of(pluck_cost(g_batch.base[s::learning_spectral]));
  double m1 = scnet::mean_of(pluck_cost(g_batch.spectral_chi[3e-3]));
  double m2 = scnet::mean_of(pluck_cost(g_batch.spectral_chi[6e-3]));
  bool nondecreasing = m0 <= m1 + 1e-12 && m1 <= m2 + 1e-12;
  bool invariant = true;
  for (int i = 0; i < kBatchSeeds; ++i) {
    double base = g_batch.base[s::learning_noclusters][i].mean_cost_per_bs;
    for (double chi : {3e-3, 6e-3})
      if (g_batch.singles_chi[chi][i].mean_cost_per_bs != base)
        invariant = false;
  }
  return {g_batch.all_ok && nondecreasing && invariant,
          fmt("spectral cost %.5f <= %.5f <= %.5f over chi; singleton "
              "learning chi-invariant: %s",
              m0, m1, m2, invariant ? "yes" : "NO")};
}

// ---------------------------------------------------------------------------
// 11: the five module invariants hold over 1000 randomized cases each.
// ---------------------------------------------------------------------------
outcome check_property_battery() {
  rng_t rng(scnet::derive_seed(1011, 0));
  int failures = 0;
  std::string first_bad;

  auto record = [&](bool ok, const char* suite) {
    if (!ok) {
      ++failures;
      if (first_bad.empty()) first_bad = suite;
    }
  };

  // a) mixed strategies stay on the probability simplex.
  for (int c = 0; c < 1000; ++c) {
    int n = 2 + static_cast<int>(scnet::uniform01(rng) * 5);
    scnet::learner_state st(n, 0.5 + 20.0 * scnet::uniform01(rng), 0.6, 0.7,
                            0.8);
    bool ok = true;
    for (int t = 0; t < 50; ++t) {
      int a = scnet::sample_index(st.pi, rng);
      scnet::update_learner(st, a, -scnet::uniform01(rng));
      double sum = 0.0;
      for (double p : st.pi) {
        ok &= p >= 0.0 && p <= 1.0;
        sum += p;
      }
      ok &= std::abs(sum - 1.0) <= 1e-12;
    }
    record(ok, "simplex");
  }

  // b) similarity is positive exactly on neighborhood edges, symmetrically.
  for (int c = 0; c < 1000; ++c) {
    int n = 2 + static_cast<int>(scnet::uniform01(rng) * 7);
    std::vector<scnet::vec2> pos;
    std::vector<double> loads;
    for (int i = 0; i < n; ++i) {
      pos.push_back(random_point(600.0, rng));
      loads.push_back(scnet::uniform01(rng));
    }
    double theta = scnet::uniform01(rng);
    auto g = scnet::build_similarity(pos, loads, 250.0, 250.0, 0.5, theta);
    bool ok = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        ok &= (g.s[a][b] > 0.0) == (g.nb.adj[a][b] != 0);
        ok &= g.s[a][b] == g.s[b][a];
      }
    record(ok, "similarity-cutoff");
  }

  // c) every clustering method yields a valid partition.
  for (int c = 0; c < 1000; ++c) {
    int n = 2 + static_cast<int>(scnet::uniform01(rng) * 10);
    std::vector<scnet::vec2> pos;
    std::vector<double> loads;
    for (int i = 0; i < n; ++i) {
      pos.push_back(random_point(500.0, rng));
      loads.push_back(scnet::uniform01(rng));
    }
    auto g = scnet::build_similarity(pos, loads, 250.0, 300.0, 1.0, 0.5);
    scnet::cluster_set cs;
    switch (c % 3) {
      case 0:
        cs = scnet::p2p_cluster(g, loads, 1 + c % 5, 8, 0);
        break;
      case 1:
        cs = scnet::spectral_cluster(g.s, loads, 0, rng, 0);
        break;
      default: {
        std::vector<std::array<double, 3>> emb;
        for (int i = 0; i < n; ++i)
          emb.push_back(
              scnet::cluster_embedding(pos[i], loads[i], 0.5, 300.0, 1.0));
        cs = scnet::kmeans_cluster(emb, loads, 1 + c % n, rng, 0);
        break;
      }
    }
    bool ok = true;
    try {
      scnet::validate_partition(cs, n);
    } catch (const std::exception&) {
      ok = false;
    }
    record(ok, "partition");
  }

  // d) association is invariant to a common positive scaling of power.
  for (int c = 0; c < 1000; ++c) {
    int nbs = 2 + static_cast<int>(scnet::uniform01(rng) * 6);
    int nue = 1 + static_cast<int>(scnet::uniform01(rng) * 8);
    std::vector<std::vector<double>> gains(nbs, std::vector<double>(nue));
    for (auto& row : gains)
      for (double& h : row)
        h = std::pow(10.0, -12.0 + 6.0 * scnet::uniform01(rng));
    std::vector<char> on(nbs);
    std::vector<double> p(nbs), rho(nbs);
    for (int b = 0; b < nbs; ++b) {
      on[b] = scnet::uniform01(rng) < 0.7 ? 1 : 0;
      p[b] = 0.5 + 39.0 * scnet::uniform01(rng);
      rho[b] = scnet::uniform01(rng);
    }
    double scale = std::pow(10.0, -3.0 + 6.0 * scnet::uniform01(rng));
    auto scaled = p;
    for (double& v : scaled) v *= scale;
    auto a = scnet::associate_ues(gains, on, p, rho, 1.0);
    auto b = scnet::associate_ues(gains, on, scaled, rho, 1.0);
    record(a.anchor == b.anchor, "association-scale");
  }

  // e) the advertised-load estimator converges under a constant signal.
  for (int c = 0; c < 1000; ++c) {
    double target = scnet::uniform01(rng);
    double expo = 0.5 + 0.45 * scnet::uniform01(rng);
    double est = scnet::uniform01(rng);
    for (long t = 1; t <= 10000; ++t)
      est = scnet::update_load_estimate(est, target, t, expo);
    record(std::abs(est - target) < 1e-8, "estimator");
  }

  return {failures == 0,
          fmt("failures %d/5000 randomized cases%s%s", failures,
              failures ? ", first in suite: " : "",
              failures ? first_bad.c_str() : "")};
}

}  // namespace

int main() {
  struct entry {
    const char* name;
    outcome (*fn)();
  };
  const entry entries[] = {
      {"embedding-similarity-identity", check_embedding_identity},
      {"schedule-optimality", check_schedule_optimality},
      {"planted-cluster-recovery", check_cluster_recovery},
      {"limit-concentration", check_limit_concentration},
      {"temperature-response", check_temperature_response},
      {"learning-convergence", check_learning_convergence},
      {"equilibrium-gap", check_equilibrium_gap},
      {"strategy-cost-ordering", check_strategy_ordering},
      {"sleep-activity", check_sleep_activity},
      {"overhead-response", check_overhead_response},
      {"property-battery", check_property_battery},
  };
  int failures = 0;
  int idx = 0;
  for (const auto& e : entries) {
    ++idx;
    auto start = std::chrono::steady_clock::now();
    outcome out;
    try {
      out = e.fn();
    } catch (const std::exception& ex) {
      out = {false, fmt("exception: %s", ex.what())};
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    if (!out.pass) ++failures;
    std::printf("[%s] %02d %-32s %s  (%.1f s)\n", out.pass ? "PASS" : "FAIL",
                idx, e.name, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures;
}
