// Command-line front end: single runs, parameter sweeps, and the numerical
// diagnostics battery. All heavy lifting lives in the header-only library.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "scnet/scnet.hpp"

namespace fs = std::filesystem;

namespace {

void write_outputs(const std::vector<scnet::run_record>& recs,
                   const fs::path& out) {
  fs::create_directories(out);
  scnet::write_runs_csv(recs, (out / "runs.csv").string());
  scnet::write_summary_json(recs, (out / "summary.json").string());
  scnet::write_cdf_csv(recs, (out / "cdf_energy.csv").string(), true);
  scnet::write_cdf_csv(recs, (out / "cdf_load.csv").string(), false);
  scnet::write_clusters_csv(recs, (out / "clusters.csv").string());
}

int run_simulate(const std::string& config, const std::string& strategy_name,
                 long slots, std::uint64_t seed, const std::string& out_dir,
                 bool trace) {
  scnet::sim_params par;
  if (!config.empty()) par = scnet::load_config(config);
  scnet::strategy strat = scnet::parse_strategy(strategy_name);
  fs::path out(out_dir);
  fs::create_directories(out);
  {
    std::ofstream echo(out / "config_used.cfg");
    echo << scnet::dump_config(par);
  }

  scnet::run_request req{par, strat, slots, seed};
  scnet::run_record rec;
  if (!trace) {
    rec = scnet::run_single(req);
  } else {
    rec.req = req;
    try {
      scnet::rng_t scenario_rng(scnet::derive_seed(seed, 0));
      auto scn = scnet::generate_scenario(par, scenario_rng);
      for (const auto& b : scn.bs) rec.bs_kinds.push_back(b.kind);
      std::ofstream tf(out / "trace.csv");
      tf << "slot,bs_id,on,rho,p_total_w\n";
      scnet::simulation sim(std::move(scn), strat, seed);
      sim.set_trace_hook([&tf](const scnet::slot_trace& tr) {
        for (std::size_t b = 0; b < tr.rho.size(); ++b)
          tf << tr.slot << ',' << b << ',' << int(tr.on[b]) << ','
             << scnet::format_double(tr.rho[b]) << ','
             << scnet::format_double(tr.p_total_w[b]) << '\n';
      });
      rec.metrics = sim.run(slots);
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
    }
  }

  write_outputs({rec}, out);
  if (!rec.ok) {
    std::cerr << "run failed: " << rec.error << "\n";
    return 1;
  }
  const auto& m = rec.metrics;
  std::cout << "strategy=" << scnet::to_string(strat) << " seed=" << seed
            << " slots=" << slots << "\n"
            << "  mean cost/BS      " << scnet::format_double(m.mean_cost_per_bs) << "\n"
            << "  mean power/BS [W] " << scnet::format_double(m.mean_power_w_per_bs) << "\n"
            << "  mean load/BS      " << scnet::format_double(m.mean_load_per_bs) << "\n"
            << "  SBS off fraction  " << scnet::format_double(m.off_fraction_sbs) << "\n"
            << "  unserved fraction " << scnet::format_double(m.unserved_fraction) << "\n"
            << "  clusters (mean)   " << scnet::format_double(m.mean_cluster_count)
            << " x " << scnet::format_double(m.mean_cluster_size) << " BSs\n"
            << "outputs in " << out.string() << "\n";
  return 0;
}

int run_sweep(const std::string& config, const std::string& out_dir, int jobs) {
  auto spec = scnet::load_sweep_config(config);
  auto reqs = scnet::expand_sweep(spec);
  std::cout << "sweep: " << reqs.size() << " runs ("
            << spec.strategies.size() << " strategies x "
            << spec.seeds.size() << " seeds), " << jobs << " workers\n";
  auto recs = scnet::run_all(reqs, jobs);
  int failed = 0;
  for (const auto& r : recs)
    if (!r.ok) {
      ++failed;
      std::cerr << "failed: strategy=" << scnet::to_string(r.req.strat)
                << " seed=" << r.req.seed << ": " << r.error << "\n";
    }
  write_outputs(recs, out_dir);
  std::cout << (static_cast<int>(recs.size()) - failed) << "/" << recs.size()
            << " runs ok; outputs in " << out_dir << "\n";
  return failed == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// verify: numerical diagnostics battery
// ---------------------------------------------------------------------------

struct check_row {
  std::string check;
  std::string instance;
  double measured = 0.0;
  double threshold = 0.0;
  bool less_than = true;  // pass iff measured < threshold (else >=)
  bool pass() const {
    return less_than ? measured < threshold : measured >= threshold;
  }
};

// Two independent players, each with a slightly better second action and no
// externality, so the per-player learning targets compose into the joint
// softmax exactly.
scnet::finite_game dominant_pair_game(double gap) {
  scnet::finite_game g;
  g.n_actions = {2, 2};
  g.util.assign(2, std::vector<double>(4, 0.0));
  for (int a0 = 0; a0 < 2; ++a0)
    for (int a1 = 0; a1 < 2; ++a1) {
      int j = g.joint_index({a0, a1});
      g.util[0][j] = -2.0 * gap + gap * a0;
      g.util[1][j] = -2.0 * gap + gap * a1;
    }
  return g;
}

int run_verify(std::uint64_t seed) {
  std::vector<check_row> rows;
  scnet::rng_t rng(scnet::derive_seed(seed, 7));

  // 1. The 3-coordinate embedding reproduces the joint similarity on edges.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 10;
      std::vector<scnet::vec2> pos(n);
      std::vector<double> loads(n);
      double theta = scnet::uniform01(rng);
      for (int i = 0; i < n; ++i) {
        pos[i] = {scnet::uniform01(rng) * 1000.0 - 500.0,
                  scnet::uniform01(rng) * 1000.0 - 500.0};
        loads[i] = scnet::uniform01(rng);
      }
      auto g = scnet::build_similarity(pos, loads, 250.0, 300.0, 1.0, theta);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          if (!g.nb.adj[a][b]) continue;
          auto ea = scnet::cluster_embedding(pos[a], loads[a], theta, 300.0, 1.0);
          auto eb = scnet::cluster_embedding(pos[b], loads[b], theta, 300.0, 1.0);
          double direct = scnet::signed_embedding_similarity(ea, eb);
          double rel = std::abs(direct - g.s[a][b]) / g.s[a][b];
          worst = std::max(worst, rel);
        }
    }
    rows.push_back({"embedding-identity", "100 random 10-BS graphs", worst,
                    1e-12, true});
  }

  // 2. Zero-temperature limit: the stationary law concentrates on optima.
  {
    double worst_tv = 0.0;
    int done = 0;
    while (done < 20) {
      auto g = scnet::random_game(2, 3, rng);
      auto regrets = scnet::system_regrets(g);
      // Demand a clear runner-up margin so "optimal" is unambiguous.
      double second = -1e9;
      for (double r : regrets)
        if (r < -1e-9) second = std::max(second, r);
      if (second > -0.05) continue;
      ++done;
      auto pi = scnet::stationary_distribution(regrets, 1e4);
      worst_tv = std::max(
          worst_tv, scnet::tv_distance(pi, scnet::limit_distribution(regrets)));
    }
    rows.push_back({"limit-concentration", "20 random 2x3 games, kappa=1e4",
                    worst_tv, 1e-3, true});
  }

  // 3. Stationary optimum mass and expected value are monotone in kappa.
  {
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(std::pow(10.0, -3.0 + i * 0.1));
    double worst_drop = 0.0;
    bool all_monotone = true;
    for (int trial = 0; trial < 20; ++trial) {
      auto g = scnet::random_game(2, 4, rng);
      auto rep = scnet::check_kappa_monotonicity(g, grid);
      all_monotone = all_monotone && rep.optimal_mass_monotone &&
                     rep.expected_value_monotone;
      worst_drop = std::max(worst_drop, rep.worst_drop);
    }
    rows.push_back({"temperature-monotonicity", "20 random 2x4 games, 61-pt grid",
                    all_monotone ? worst_drop : 1.0, 1e-12, true});
  }

  // 4. Analytic kappa-derivatives match central finite differences.
  {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      auto g = scnet::random_game(2, 3, rng);
      auto regrets = scnet::system_regrets(g);
      double kappa = 0.5 + 4.0 * scnet::uniform01(rng);
      double h = 1e-6 * kappa;
      auto lo = scnet::stationary_distribution(regrets, kappa - h);
      auto hi = scnet::stationary_distribution(regrets, kappa + h);
      auto d = scnet::stationary_derivative(regrets, kappa);
      for (std::size_t a = 0; a < d.size(); ++a)
        worst = std::max(worst, std::abs((hi[a] - lo[a]) / (2 * h) - d[a]));
      double fd_e = (scnet::expectation(hi, regrets) -
                     scnet::expectation(lo, regrets)) / (2 * h);
      auto pi = scnet::stationary_distribution(regrets, kappa);
      worst = std::max(worst, std::abs(fd_e - scnet::variance(pi, regrets)));
    }
    rows.push_back({"derivative-identity", "20 random 2x3 games", worst, 1e-6,
                    true});
  }

  // 5. A finite temperature reaches any expected value below the optimum.
  {
    double worst_gap = -1.0;
    for (int trial = 0; trial < 10; ++trial) {
      auto g = scnet::random_game(2, 3, rng);
      auto regrets = scnet::system_regrets(g);
      double at_one = scnet::expectation(
          scnet::stationary_distribution(regrets, 1.0), regrets);
      double target = 0.5 * at_one;  // halfway between kappa=1 value and 0
      double kappa = scnet::temperature_for_threshold(g, target);
      double reached = scnet::expectation(
          scnet::stationary_distribution(regrets, kappa), regrets);
      worst_gap = std::max(worst_gap, target - reached);
    }
    rows.push_back({"threshold-temperature", "10 random 2x3 games", worst_gap,
                    0.0, true});
  }

  // 6. Learner trajectories: the joint empirical law over the second half of
  // the horizon approaches the stationary softmax.
  {
    auto g = dominant_pair_game(0.01);
    scnet::rng_t lrng(scnet::derive_seed(seed, 11));
    auto res = scnet::empirical_vs_stationary(g, 10.0, 200000, lrng);
    rows.push_back({"empirical-convergence", "2x2 independent-pair game, T=2e5",
                    res.tv, 0.05, true});

    // 7. That empirical play is an approximate coarse equilibrium, and the
    // zero-temperature limit is an exact one.
    auto cce = scnet::check_epsilon_cce(g, res.empirical, 0.05);
    rows.push_back({"coarse-equilibrium", "empirical play of the same game",
                    cce.worst_deviation, 0.05, true});
    auto limit = scnet::limit_distribution(scnet::system_regrets(g));
    auto cce0 = scnet::check_epsilon_cce(g, limit, 1e-12);
    rows.push_back({"limit-equilibrium", "zero-temperature limit, same game",
                    cce0.worst_deviation, 1e-12, true});
  }

  int failures = 0;
  std::printf("%-26s %-38s %13s %11s %s\n", "check", "instance", "measured",
              "threshold", "result");
  for (const auto& r : rows) {
    if (!r.pass()) ++failures;
    std::printf("%-26s %-38s %13.4e %11.1e %s\n", r.check.c_str(),
                r.instance.c_str(), r.measured, r.threshold,
                r.pass() ? "pass" : "FAIL");
  }
  std::printf("%d/%zu checks passed\n", static_cast<int>(rows.size()) - failures,
              rows.size());
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"small-cell ON/OFF simulation"};
  app.require_subcommand(1);

  std::string config, out_dir = "out";
  std::string strategy_name = "classical";
  long slots = 1000;
  std::uint64_t seed = 1;
  bool trace = false;
  int jobs = std::max(1u, std::thread::hardware_concurrency());

  auto* sim = app.add_subcommand("simulate", "run one strategy/seed");
  sim->add_option("--config", config, "key = value parameter file");
  sim->add_option("--strategy", strategy_name,
                  "classical | random-onoff | learning-noclusters | "
                  "learning-kmeans | learning-spectral | learning-p2p");
  sim->add_option("--slots", slots, "number of time slots");
  sim->add_option("--seed", seed, "run seed");
  sim->add_option("--out", out_dir, "output directory");
  sim->add_flag("--trace", trace, "also write per-slot trace.csv");

  auto* swp = app.add_subcommand("sweep", "run a strategy/seed/parameter grid");
  swp->add_option("--config", config, "sweep parameter file")->required();
  swp->add_option("--out", out_dir, "output directory");
  swp->add_option("--jobs", jobs, "worker threads");

  auto* ver = app.add_subcommand("verify", "numerical diagnostics battery");
  ver->add_option("--seed", seed, "diagnostics seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed())
      return run_simulate(config, strategy_name, slots, seed, out_dir, trace);
    if (swp->parsed()) return run_sweep(config, out_dir, jobs);
    if (ver->parsed()) return run_verify(seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
