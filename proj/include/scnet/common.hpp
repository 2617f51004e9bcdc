#pragma once

// Shared basics: error types, deterministic RNG helpers, 2-D points, and
// small formatting utilities used across the library.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace scnet {

// Geometry that makes no physical sense (non-positive distances, UE on top
// of a BS after generation, ...).
struct invalid_geometry : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition on dynamic state was violated (e.g. rate requested from an
// OFF base station).
struct invalid_state : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario generation could not satisfy the placement constraints.
struct generation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative numerical routine failed to converge; carries the residual
// it stopped at.
struct numerical_failure : std::runtime_error {
  double residual;
  numerical_failure(const std::string& what, double res)
      : std::runtime_error(what), residual(res) {}
};

using rng_t = std::mt19937_64;

// Uniform double in [0, 1) built directly from the top 53 bits so results
// are identical across standard libraries.
inline double uniform01(rng_t& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). n must be positive.
inline int uniform_below(rng_t& rng, int n) {
  return static_cast<int>(uniform01(rng) * n);
}

// Stream-splitting: derive an independent seed from a master seed without
// correlating the two generators (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const vec2& a, const vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Fixed-format double for CSV/JSON output; deterministic across runs.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

inline double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

// Half-width of the normal-approximation 95% confidence interval.
inline double ci95_halfwidth(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  return 1.96 * sample_std(xs) / std::sqrt(static_cast<double>(xs.size()));
}

}  // namespace scnet
