#pragma once

// Experiment harness: single runs, sweep cross-products with a bounded
// worker pool, and machine-readable outputs (runs.csv, summary.json,
// cdf_energy.csv, cdf_load.csv, clusters.csv).

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "scnet/common.hpp"
#include "scnet/scenario.hpp"
#include "scnet/simulation.hpp"

namespace scnet {

struct run_request {
  sim_params par;
  strategy strat = strategy::classical;
  long slots = 1000;
  std::uint64_t seed = 1;
};

struct run_record {
  run_request req;
  run_metrics metrics;
  bool ok = true;
  std::string error;
  std::vector<bs_kind> bs_kinds;  // for the CDF files
};

inline run_record run_single(const run_request& req) {
  run_record rec;
  rec.req = req;
  try {
    rng_t scenario_rng(derive_seed(req.seed, 0));
    auto scn = generate_scenario(req.par, scenario_rng);
    for (const auto& b : scn.bs) rec.bs_kinds.push_back(b.kind);
    simulation sim(std::move(scn), req.strat, req.seed);
    rec.metrics = sim.run(req.slots);
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Sweep specification (parsed from the same config file as sim_params)
// ---------------------------------------------------------------------------

struct sweep_axis {
  std::string field;           // a sim_params field name
  std::vector<double> values;
};

struct sweep_spec {
  sim_params base;
  std::vector<strategy> strategies = {strategy::classical};
  std::vector<std::uint64_t> seeds = {1};
  long slots = 1000;
  std::vector<sweep_axis> axes;  // cross product; may be empty
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline void set_param_field(sim_params& par, const std::string& field,
                            double value) {
  for (const auto& f : config_fields())
    if (field == f.name) {
      f.set(par, format_double(value));
      return;
    }
  throw std::invalid_argument("unknown sweep field: " + field);
}

}  // namespace detail

// Reads a config file that may carry, beyond sim_params fields:
//   strategies = classical, learning-spectral, ...
//   seeds = 20            (seed count; runs use 1..20)
//   seed_list = 3, 5, 8   (explicit seeds, overrides `seeds`)
//   slots = 50000
//   sweep_<field> = v1 v2 v3   (any numeric sim_params field)
inline sweep_spec load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  sweep_spec spec;
  auto extras = apply_config(in, spec.base);
  for (const auto& [key, value] : extras) {
    if (key == "strategies") {
      spec.strategies.clear();
      for (const auto& name : detail::split_list(value))
        spec.strategies.push_back(parse_strategy(name));
    } else if (key == "seeds") {
      if (extras.count("seed_list")) continue;  // explicit list wins
      int n = static_cast<int>(detail::parse_num(value));
      if (n < 1) throw std::invalid_argument("seeds must be >= 1");
      spec.seeds.clear();
      for (int s = 1; s <= n; ++s) spec.seeds.push_back(s);
    } else if (key == "seed_list") {
      spec.seeds.clear();
      for (const auto& tok : detail::split_list(value))
        spec.seeds.push_back(static_cast<std::uint64_t>(detail::parse_num(tok)));
    } else if (key == "slots") {
      spec.slots = static_cast<long>(detail::parse_num(value));
    } else if (key.rfind("sweep_", 0) == 0) {
      sweep_axis ax;
      ax.field = key.substr(6);
      for (const auto& tok : detail::split_list(value))
        ax.values.push_back(detail::parse_num(tok));
      if (ax.values.empty())
        throw std::invalid_argument("empty sweep axis: " + key);
      // Validate the field name early.
      sim_params probe = spec.base;
      detail::set_param_field(probe, ax.field, ax.values.front());
      spec.axes.push_back(std::move(ax));
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  if (spec.strategies.empty() || spec.seeds.empty())
    throw std::invalid_argument("config needs at least one strategy and seed");
  return spec;
}

// Expands the sweep into concrete run requests (axis cross product x
// strategies x seeds), in deterministic order.
inline std::vector<run_request> expand_sweep(const sweep_spec& spec) {
  std::vector<sim_params> cells{spec.base};
  for (const auto& ax : spec.axes) {
    std::vector<sim_params> next;
    for (const auto& cell : cells)
      for (double v : ax.values) {
        sim_params p = cell;
        detail::set_param_field(p, ax.field, v);
        next.push_back(p);
      }
    cells = std::move(next);
  }
  std::vector<run_request> reqs;
  for (const auto& cell : cells)
    for (strategy st : spec.strategies)
      for (std::uint64_t seed : spec.seeds)
        reqs.push_back(run_request{cell, st, spec.slots, seed});
  return reqs;
}

// Bounded worker pool; results keep request order. Failures are recorded in
// the corresponding record, never thrown.
inline std::vector<run_record> run_all(const std::vector<run_request>& reqs,
                                       int jobs) {
  std::vector<run_record> out(reqs.size());
  if (jobs < 2 || reqs.size() < 2) {
    for (std::size_t i = 0; i < reqs.size(); ++i) out[i] = run_single(reqs[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= reqs.size()) return;
      out[i] = run_single(reqs[i]);
    }
  };
  std::vector<std::thread> pool;
  int n = std::min<int>(jobs, static_cast<int>(reqs.size()));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

namespace detail {

// The axis-identifying columns shared by all output files.
inline std::string cell_columns() {
  return "strategy,seed,num_sbs,num_ue,area_radius_m,slots,theta,eps_d_m,"
         "chi_w_per_m,kappa";
}

inline std::string cell_values(const run_record& r) {
  std::ostringstream os;
  os << to_string(r.req.strat) << ',' << r.req.seed << ','
     << r.req.par.num_sbs << ',' << r.req.par.num_ue << ','
     << format_double(r.req.par.area_radius_m) << ',' << r.req.slots << ','
     << format_double(r.req.par.theta) << ','
     << format_double(r.req.par.eps_d_m) << ','
     << format_double(r.req.par.chi_w_per_m) << ','
     << format_double(r.req.par.kappa);
  return os.str();
}

}  // namespace detail

inline void write_runs_csv(const std::vector<run_record>& recs,
                           const std::string& path) {
  std::ofstream out(path);
  out << detail::cell_columns()
      << ",status,mean_cost_per_bs,mean_power_w_per_bs,mean_load_per_bs,"
         "off_fraction_sbs,unserved_fraction,overload_fraction,"
         "mean_cluster_count,mean_cluster_size,error\n";
  for (const auto& r : recs) {
    out << detail::cell_values(r) << ',' << (r.ok ? "ok" : "failed") << ',';
    const auto& m = r.metrics;
    out << format_double(m.mean_cost_per_bs) << ','
        << format_double(m.mean_power_w_per_bs) << ','
        << format_double(m.mean_load_per_bs) << ','
        << format_double(m.off_fraction_sbs) << ','
        << format_double(m.unserved_fraction) << ','
        << format_double(m.overload_fraction) << ','
        << format_double(m.mean_cluster_count) << ','
        << format_double(m.mean_cluster_size) << ',';
    std::string err = r.error;
    for (char& c : err)
      if (c == ',' || c == '\n') c = ';';
    out << err << '\n';
  }
}

inline void write_cdf_csv(const std::vector<run_record>& recs,
                          const std::string& path, bool energy) {
  std::ofstream out(path);
  out << detail::cell_columns() << ",bs_id,bs_kind,"
      << (energy ? "mean_power_w" : "mean_load") << "\n";
  for (const auto& r : recs) {
    if (!r.ok) continue;
    const auto& vals = energy ? r.metrics.bs_mean_power_w : r.metrics.bs_mean_load;
    for (std::size_t b = 0; b < vals.size(); ++b)
      out << detail::cell_values(r) << ',' << b << ','
          << (r.bs_kinds[b] == bs_kind::mbs ? "mbs" : "sbs") << ','
          << format_double(vals[b]) << '\n';
  }
}

inline void write_clusters_csv(const std::vector<run_record>& recs,
                               const std::string& path) {
  std::ofstream out(path);
  out << detail::cell_columns()
      << ",epoch_slot,method,cluster_count,mean_size,labels,heads\n";
  for (const auto& r : recs) {
    if (!r.ok) continue;
    for (const auto& ep : r.metrics.epochs) {
      out << detail::cell_values(r) << ',' << ep.slot << ',' << ep.method << ','
          << ep.cluster_count << ',' << format_double(ep.mean_size) << ',';
      for (std::size_t b = 0; b < ep.labels.size(); ++b) {
        if (b) out << '|';
        out << ep.labels[b];
      }
      out << ',';
      for (std::size_t c = 0; c < ep.heads.size(); ++c) {
        if (c) out << '|';
        out << ep.heads[c];
      }
      out << '\n';
    }
  }
}

// Aggregate means with spread across seeds for every (strategy x axis cell).
inline void write_summary_json(const std::vector<run_record>& recs,
                               const std::string& path) {
  // Group by everything that identifies a cell except the seed.
  std::map<std::string, std::vector<const run_record*>> cells;
  for (const auto& r : recs) {
    std::ostringstream key;
    key << to_string(r.req.strat) << '|' << r.req.par.num_sbs << '|'
        << r.req.par.num_ue << '|' << format_double(r.req.par.area_radius_m)
        << '|' << r.req.slots << '|' << format_double(r.req.par.theta) << '|'
        << format_double(r.req.par.eps_d_m) << '|'
        << format_double(r.req.par.chi_w_per_m) << '|'
        << format_double(r.req.par.kappa);
    cells[key.str()].push_back(&r);
  }
  std::ostringstream out;
  out << "{\n  \"schema\": \"scnet-summary-v1\",\n  \"cells\": [\n";
  bool first_cell = true;
  for (const auto& [key, rs] : cells) {
    const run_record& head = *rs.front();
    if (!first_cell) out << ",\n";
    first_cell = false;
    out << "    {\n";
    out << "      \"strategy\": \"" << to_string(head.req.strat) << "\",\n";
    out << "      \"num_sbs\": " << head.req.par.num_sbs << ",\n";
    out << "      \"num_ue\": " << head.req.par.num_ue << ",\n";
    out << "      \"area_radius_m\": "
        << format_double(head.req.par.area_radius_m) << ",\n";
    out << "      \"slots\": " << head.req.slots << ",\n";
    out << "      \"theta\": " << format_double(head.req.par.theta) << ",\n";
    out << "      \"eps_d_m\": " << format_double(head.req.par.eps_d_m)
        << ",\n";
    out << "      \"chi_w_per_m\": "
        << format_double(head.req.par.chi_w_per_m) << ",\n";
    out << "      \"kappa\": " << format_double(head.req.par.kappa) << ",\n";
    int failed = 0;
    for (const auto* r : rs)
      if (!r->ok) ++failed;
    out << "      \"runs\": " << rs.size() << ",\n";
    out << "      \"failed\": " << failed << ",\n";
    out << "      \"metrics\": {";
    struct metric_def {
      const char* name;
      double run_metrics::*field;
    };
    static const metric_def defs[] = {
        {"mean_cost_per_bs", &run_metrics::mean_cost_per_bs},
        {"mean_power_w_per_bs", &run_metrics::mean_power_w_per_bs},
        {"mean_load_per_bs", &run_metrics::mean_load_per_bs},
        {"off_fraction_sbs", &run_metrics::off_fraction_sbs},
        {"unserved_fraction", &run_metrics::unserved_fraction},
        {"overload_fraction", &run_metrics::overload_fraction},
        {"mean_cluster_count", &run_metrics::mean_cluster_count},
        {"mean_cluster_size", &run_metrics::mean_cluster_size},
    };
    bool first_metric = true;
    for (const auto& def : defs) {
      std::vector<double> xs;
      for (const auto* r : rs)
        if (r->ok) xs.push_back(r->metrics.*def.field);
      if (!first_metric) out << ",";
      first_metric = false;
      out << "\n        \"" << def.name << "\": {\"mean\": "
          << format_double(mean_of(xs))
          << ", \"std\": " << format_double(sample_std(xs))
          << ", \"ci95\": " << format_double(ci95_halfwidth(xs)) << "}";
    }
    out << "\n      }\n    }";
  }
  out << "\n  ]\n}\n";
  std::ofstream f(path);
  f << out.str();
}

}  // namespace scnet
