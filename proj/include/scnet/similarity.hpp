#pragma once

// Similarity graph over base stations: range-limited neighborhood, distance
// similarity, load dissimilarity weighting, their joint product, and the
// 3-coordinate embedding whose signed norm reproduces the joint similarity.

#include <array>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "scnet/common.hpp"

namespace scnet {

// Adjacency limited to eps_d: an edge iff 0 < distance <= eps_d. Neighbor
// counts include the BS itself, so an isolated BS has nb_size 1.
struct neighborhood {
  std::vector<std::vector<char>> adj;
  std::vector<int> nb_size;
};

inline neighborhood build_neighborhood(const std::vector<vec2>& pos,
                                       double eps_d) {
  if (eps_d < 0.0) throw std::invalid_argument("neighborhood range must be >= 0");
  const int n = static_cast<int>(pos.size());
  neighborhood g;
  g.adj.assign(n, std::vector<char>(n, 0));
  g.nb_size.assign(n, 1);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      double d = distance(pos[a], pos[b]);
      if (d > 0.0 && d <= eps_d) {
        g.adj[a][b] = g.adj[b][a] = 1;
        ++g.nb_size[a];
        ++g.nb_size[b];
      }
    }
  return g;
}

// Gaussian similarity in distance, zero beyond the neighborhood range.
inline double distance_similarity(const vec2& a, const vec2& b, double eps_d,
                                  double sigma_d) {
  if (!(sigma_d > 0.0)) throw std::invalid_argument("sigma_d must be positive");
  double d = distance(a, b);
  if (d > eps_d) return 0.0;
  return std::exp(-d * d / (2.0 * sigma_d * sigma_d));
}

// Load weighting with a positive exponent: BSs with *different* loads get a
// larger weight (dissimilarity attracts, so lightly and heavily loaded BSs
// prefer to cluster together). Range [1, exp(1/(2 sigma_l^2))].
inline double load_similarity(double rho_a, double rho_b, double sigma_l) {
  if (!(sigma_l > 0.0)) throw std::invalid_argument("sigma_l must be positive");
  double d = rho_a - rho_b;
  return std::exp(d * d / (2.0 * sigma_l * sigma_l));
}

// Weighted geometric combination; zero whenever the distance part is zero
// (0^0 counts as 0 so theta = 0 still honors the neighborhood cutoff).
inline double joint_similarity(double s_dist, double s_load, double theta) {
  if (theta < 0.0 || theta > 1.0)
    throw std::invalid_argument("theta must lie in [0,1]");
  if (s_dist == 0.0) return 0.0;
  return std::pow(s_dist, theta) * std::pow(s_load, 1.0 - theta);
}

struct similarity_graph {
  neighborhood nb;
  std::vector<std::vector<double>> s;  // joint similarity; 0 on diagonal/off-edges
};

inline similarity_graph build_similarity(const std::vector<vec2>& pos,
                                         const std::vector<double>& loads,
                                         double eps_d, double sigma_d,
                                         double sigma_l, double theta) {
  const int n = static_cast<int>(pos.size());
  similarity_graph g;
  g.nb = build_neighborhood(pos, eps_d);
  g.s.assign(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (!g.nb.adj[a][b]) continue;
      double sd = distance_similarity(pos[a], pos[b], eps_d, sigma_d);
      double sl = load_similarity(loads[a], loads[b], sigma_l);
      g.s[a][b] = g.s[b][a] = joint_similarity(sd, sl, theta);
    }
  return g;
}

// Three-coordinate embedding (sigma is an arbitrary scale, fixed to 1 by
// callers). The third coordinate carries the load; in the similarity
// identity its squared difference enters with a NEGATIVE sign, which
// signed_embedding_similarity implements. Plain Euclidean treatment of the
// same coordinates is what k-means consumes.
inline std::array<double, 3> cluster_embedding(const vec2& y, double rho,
                                               double theta, double sigma_d,
                                               double sigma_l,
                                               double sigma = 1.0) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  double wd = std::sqrt(theta) * sigma / sigma_d;
  double wl = std::sqrt(1.0 - theta) * sigma / sigma_l;
  return {wd * y.x, wd * y.y, wl * rho};
}

// Gaussian of the signed squared distance: the first two coordinate
// differences penalize, the third one (load) rewards. On an edge this equals
// joint_similarity of the same pair exactly.
inline double signed_embedding_similarity(const std::array<double, 3>& a,
                                          const std::array<double, 3>& b,
                                          double sigma = 1.0) {
  double d0 = a[0] - b[0], d1 = a[1] - b[1], d2 = a[2] - b[2];
  double signed_sq = d0 * d0 + d1 * d1 - d2 * d2;
  return std::exp(-signed_sq / (2.0 * sigma * sigma));
}

// Debug dump, row/column order = BS id order.
inline std::string similarity_to_csv(const similarity_graph& g) {
  std::ostringstream out;
  for (const auto& row : g.s) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out << ',';
      out << format_double(row[j]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace scnet
