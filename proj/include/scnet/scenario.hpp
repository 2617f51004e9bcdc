#pragma once

// Scenario parameters (defaults follow the simulation-parameter table used
// throughout), scenario generation with minimum-distance constraints, and a
// key=value config file parser.

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "scnet/common.hpp"
#include "scnet/units.hpp"

namespace scnet {

enum class bs_kind { mbs, sbs };

struct bs_spec {
  int id = 0;
  bs_kind kind = bs_kind::sbs;
  vec2 pos;
  double p_max_w = 1.0;       // maximum transmit power
  double p_base_w = 2.0;      // baseline circuit power
  double amp_eff = 0.05;      // power amplifier efficiency (fraction)
  double sleep_fraction = 0.5;  // share of base power still drawn when OFF
};

// Every tunable of the model, in SI units except where the name says dBm.
struct sim_params {
  // Radio / traffic
  double bandwidth_hz = 10e6;
  double noise_dbm_per_hz = -174.0;
  double traffic_bps = 180e3;  // per-UE downlink influx
  // Per-kind BS hardware
  double mbs_max_power_dbm = 46.0;
  double sbs_max_power_dbm = 30.0;
  double mbs_amp_eff = 0.2355;
  double sbs_amp_eff = 0.0542;
  double mbs_base_power_dbm = 40.0;
  double sbs_base_power_dbm = 33.0;
  double sleep_fraction = 0.5;  // q
  // Geometry
  double area_radius_m = 500.0;
  int num_sbs = 10;
  int num_ue = 50;
  double min_mbs_sbs_m = 75.0;
  double min_mbs_ue_m = 35.0;
  double min_sbs_sbs_m = 40.0;
  double min_sbs_ue_m = 10.0;
  // Similarity graph
  double eps_d_m = 250.0;   // neighborhood range
  double sigma_d_m = 300.0; // distance-similarity scale
  double sigma_l = 1.0;     // load-similarity scale
  double theta = 0.5;       // distance-vs-load weight
  // Coordination overhead. The per-meter signaling sensitivity; the
  // literature value 4.78 dBm/m corresponds to 3.0e-3 W/m. Default 0 keeps
  // the base scenario overhead-free; sweeps exercise 3e-3 and 6e-3.
  double chi_w_per_m = 0.0;
  bool overhead_paid_when_off = true;  // OFF members still coordinate
  // Association
  double assoc_load_exponent = 1.0;  // n in (1-load)^n
  double preferred_load = 0.5;       // initial advertised load
  // Cost
  double lambda_weight = 0.5;  // energy share of the cost
  double mu_weight = 0.5;      // load share of the cost
  // Learning
  double kappa = 10.0;
  double exp_tau = 0.6;   // utility-estimate rate exponent
  double exp_iota = 0.7;  // regret-estimate rate exponent
  double exp_eps = 0.8;   // strategy rate exponent
  double exp_nu = 0.9;    // load-estimate rate exponent
  int power_levels = 1;   // L transmit levels per ON BS
  bool mbs_controllable = false;
  // Clustering
  int cluster_period = 100;  // re-cluster every N slots
  int cmax = 4;              // peer-to-peer cluster size cap
  int p2p_rounds = 8;
  int kmeans_fixed_k = 0;    // 0: pick k by the spectral eigengap

  double noise_w() const { return dbm_to_watt(noise_dbm_per_hz) * bandwidth_hz; }
  bs_spec make_bs(int id, bs_kind kind, vec2 pos) const {
    bs_spec b;
    b.id = id;
    b.kind = kind;
    b.pos = pos;
    if (kind == bs_kind::mbs) {
      b.p_max_w = dbm_to_watt(mbs_max_power_dbm);
      b.p_base_w = dbm_to_watt(mbs_base_power_dbm);
      b.amp_eff = mbs_amp_eff;
    } else {
      b.p_max_w = dbm_to_watt(sbs_max_power_dbm);
      b.p_base_w = dbm_to_watt(sbs_base_power_dbm);
      b.amp_eff = sbs_amp_eff;
    }
    b.sleep_fraction = sleep_fraction;
    return b;
  }
};

struct network_scenario {
  sim_params par;
  std::vector<bs_spec> bs;  // index 0 is always the MBS
  std::vector<vec2> ue;

  int num_bs() const { return static_cast<int>(bs.size()); }
  int num_ue() const { return static_cast<int>(ue.size()); }
};

namespace detail {

inline vec2 sample_disc(double radius, rng_t& rng) {
  double r = radius * std::sqrt(uniform01(rng));
  double a = 2.0 * M_PI * uniform01(rng);
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace detail

// One MBS at the origin; SBSs and UEs uniform over the disc, rejection
// sampled against the pairwise minimum distances. Throws generation_error
// if a placement cannot be found within the attempt budget.
inline network_scenario generate_scenario(const sim_params& par, rng_t& rng) {
  constexpr int kMaxAttempts = 100000;
  if (par.num_sbs < 0 || par.num_ue < 0)
    throw std::invalid_argument("negative entity count");
  if (par.area_radius_m <= std::max({par.min_mbs_sbs_m, par.min_mbs_ue_m,
                                     par.min_sbs_sbs_m, par.min_sbs_ue_m}))
    throw std::invalid_argument("area radius must exceed minimum distances");
  network_scenario scn;
  scn.par = par;
  scn.bs.push_back(par.make_bs(0, bs_kind::mbs, {0.0, 0.0}));
  for (int i = 0; i < par.num_sbs; ++i) {
    int attempts = 0;
    for (;;) {
      if (++attempts > kMaxAttempts)
        throw generation_error("could not place SBS within attempt budget");
      vec2 p = detail::sample_disc(par.area_radius_m, rng);
      if (std::hypot(p.x, p.y) < par.min_mbs_sbs_m) continue;
      bool ok = true;
      for (const auto& other : scn.bs)
        if (other.kind == bs_kind::sbs &&
            distance(other.pos, p) < par.min_sbs_sbs_m) {
          ok = false;
          break;
        }
      if (!ok) continue;
      scn.bs.push_back(par.make_bs(static_cast<int>(scn.bs.size()), bs_kind::sbs, p));
      break;
    }
  }
  for (int i = 0; i < par.num_ue; ++i) {
    int attempts = 0;
    for (;;) {
      if (++attempts > kMaxAttempts)
        throw generation_error("could not place UE within attempt budget");
      vec2 p = detail::sample_disc(par.area_radius_m, rng);
      if (std::hypot(p.x, p.y) < par.min_mbs_ue_m) continue;
      bool ok = true;
      for (const auto& b : scn.bs)
        if (b.kind == bs_kind::sbs && distance(b.pos, p) < par.min_sbs_ue_m) {
          ok = false;
          break;
        }
      if (!ok) continue;
      scn.ue.push_back(p);
      break;
    }
  }
  return scn;
}

// ---------------------------------------------------------------------------
// Config file: `key = value` lines, '#' starts a comment, unknown keys are
// an error. Field names match sim_params members.
// ---------------------------------------------------------------------------

namespace detail {

struct config_field {
  const char* name;
  std::function<void(sim_params&, const std::string&)> set;
  std::function<std::string(const sim_params&)> get;
};

inline double parse_num(const std::string& s) {
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw std::invalid_argument("trailing junk in number: " + s);
  return v;
}

inline bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("expected boolean, got: " + s);
}

#define SCNET_NUM_FIELD(member) \
  config_field{#member, \
      [](sim_params& p, const std::string& v) { p.member = parse_num(v); }, \
      [](const sim_params& p) { return format_double(static_cast<double>(p.member)); }}
#define SCNET_INT_FIELD(member) \
  config_field{#member, \
      [](sim_params& p, const std::string& v) { p.member = static_cast<int>(parse_num(v)); }, \
      [](const sim_params& p) { return std::to_string(p.member); }}
#define SCNET_BOOL_FIELD(member) \
  config_field{#member, \
      [](sim_params& p, const std::string& v) { p.member = parse_bool(v); }, \
      [](const sim_params& p) { return p.member ? "true" : "false"; }}

inline const std::vector<config_field>& config_fields() {
  static const std::vector<config_field> fields = {
      SCNET_NUM_FIELD(bandwidth_hz),
      SCNET_NUM_FIELD(noise_dbm_per_hz),
      SCNET_NUM_FIELD(traffic_bps),
      SCNET_NUM_FIELD(mbs_max_power_dbm),
      SCNET_NUM_FIELD(sbs_max_power_dbm),
      SCNET_NUM_FIELD(mbs_amp_eff),
      SCNET_NUM_FIELD(sbs_amp_eff),
      SCNET_NUM_FIELD(mbs_base_power_dbm),
      SCNET_NUM_FIELD(sbs_base_power_dbm),
      SCNET_NUM_FIELD(sleep_fraction),
      SCNET_NUM_FIELD(area_radius_m),
      SCNET_INT_FIELD(num_sbs),
      SCNET_INT_FIELD(num_ue),
      SCNET_NUM_FIELD(min_mbs_sbs_m),
      SCNET_NUM_FIELD(min_mbs_ue_m),
      SCNET_NUM_FIELD(min_sbs_sbs_m),
      SCNET_NUM_FIELD(min_sbs_ue_m),
      SCNET_NUM_FIELD(eps_d_m),
      SCNET_NUM_FIELD(sigma_d_m),
      SCNET_NUM_FIELD(sigma_l),
      SCNET_NUM_FIELD(theta),
      SCNET_NUM_FIELD(chi_w_per_m),
      SCNET_BOOL_FIELD(overhead_paid_when_off),
      SCNET_NUM_FIELD(assoc_load_exponent),
      SCNET_NUM_FIELD(preferred_load),
      SCNET_NUM_FIELD(lambda_weight),
      SCNET_NUM_FIELD(mu_weight),
      SCNET_NUM_FIELD(kappa),
      SCNET_NUM_FIELD(exp_tau),
      SCNET_NUM_FIELD(exp_iota),
      SCNET_NUM_FIELD(exp_eps),
      SCNET_NUM_FIELD(exp_nu),
      SCNET_INT_FIELD(power_levels),
      SCNET_BOOL_FIELD(mbs_controllable),
      SCNET_INT_FIELD(cluster_period),
      SCNET_INT_FIELD(cmax),
      SCNET_INT_FIELD(p2p_rounds),
      SCNET_INT_FIELD(kmeans_fixed_k),
  };
  return fields;
}

#undef SCNET_NUM_FIELD
#undef SCNET_INT_FIELD
#undef SCNET_BOOL_FIELD

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

// Applies `key = value` assignments from the stream onto `par`. Returns the
// map of keys that were set (used by the sweep parser for extra keys).
inline std::map<std::string, std::string> apply_config(std::istream& in,
                                                       sim_params& par) {
  std::map<std::string, std::string> extras;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    bool known = false;
    for (const auto& f : detail::config_fields())
      if (key == f.name) {
        f.set(par, value);
        known = true;
        break;
      }
    if (!known) extras[key] = value;
  }
  return extras;
}

inline sim_params load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  sim_params par;
  auto extras = apply_config(in, par);
  if (!extras.empty())
    throw std::invalid_argument("unknown config key: " + extras.begin()->first);
  return par;
}

// Serializes all parameters (defaults documentation / reproducibility echo).
inline std::string dump_config(const sim_params& par) {
  std::ostringstream out;
  for (const auto& f : detail::config_fields())
    out << f.name << " = " << f.get(par) << "\n";
  return out.str();
}

}  // namespace scnet
