#pragma once

// Partitioning of base stations into clusters: Lloyd k-means over the real
// embedding, spectral clustering with eigengap model selection, and a
// decentralized peer-to-peer merge protocol with a size cap.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "scnet/common.hpp"
#include "scnet/jacobi.hpp"
#include "scnet/similarity.hpp"

namespace scnet {

struct cluster_set {
  std::vector<std::vector<int>> members;  // disjoint, nonempty, ids ascending
  std::vector<int> head;                  // per cluster
  std::string method;
  long epoch = 0;

  int cluster_count() const { return static_cast<int>(members.size()); }
  double mean_size(int total) const {
    return members.empty() ? 0.0
                           : static_cast<double>(total) / members.size();
  }
  // Cluster index of each BS.
  std::vector<int> labels(int n) const {
    std::vector<int> lab(n, -1);
    for (int c = 0; c < cluster_count(); ++c)
      for (int b : members[c]) lab[b] = c;
    return lab;
  }
};

// Throws if the cluster list is not a partition of {0..n-1}.
inline void validate_partition(const cluster_set& cs, int n) {
  std::vector<int> seen(n, 0);
  for (const auto& c : cs.members) {
    if (c.empty()) throw invalid_state("empty cluster");
    for (int b : c) {
      if (b < 0 || b >= n) throw invalid_state("cluster member out of range");
      if (seen[b]++) throw invalid_state("BS assigned to two clusters");
    }
  }
  for (int b = 0; b < n; ++b)
    if (!seen[b]) throw invalid_state("BS missing from the partition");
}

// Builds a cluster_set from per-BS labels; the head of each cluster is the
// member with the lowest advertised load (ties: lowest id). Clusters are
// ordered by their smallest member id for deterministic output.
inline cluster_set make_cluster_set(const std::vector<int>& labels,
                                    const std::vector<double>& loads,
                                    const std::string& method, long epoch) {
  const int n = static_cast<int>(labels.size());
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  std::vector<std::vector<int>> groups(k);
  for (int b = 0; b < n; ++b) {
    if (labels[b] < 0) throw invalid_state("unlabeled BS");
    groups[labels[b]].push_back(b);
  }
  groups.erase(std::remove_if(groups.begin(), groups.end(),
                              [](const auto& g) { return g.empty(); }),
               groups.end());
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  cluster_set cs;
  cs.method = method;
  cs.epoch = epoch;
  for (auto& g : groups) {
    std::sort(g.begin(), g.end());
    int head = g.front();
    for (int b : g)
      if (loads[b] < loads[head]) head = b;
    cs.members.push_back(std::move(g));
    cs.head.push_back(head);
  }
  validate_partition(cs, n);
  return cs;
}

// ---------------------------------------------------------------------------
// k-means (any dimension; spectral clustering feeds |B| x k rows into it)
// ---------------------------------------------------------------------------

struct kmeans_result {
  std::vector<int> labels;
  std::vector<double> objective_history;  // within-cluster sum of squares
};

namespace detail {

inline double sq_dist(const std::vector<double>& a,
                      const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// k-means++ style seeding: spreads the initial centroids with probability
// proportional to squared distance from the chosen set.
inline std::vector<std::vector<double>> seed_centroids(
    const std::vector<std::vector<double>>& pts, int k, rng_t& rng) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::vector<double>> centers;
  centers.push_back(pts[uniform_below(rng, n)]);
  std::vector<double> d2(n, 0.0);
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : centers) best = std::min(best, sq_dist(pts[i], c));
      d2[i] = best;
      total += best;
    }
    int pick;
    if (total <= 0.0) {
      pick = uniform_below(rng, n);  // all points coincide with a centroid
    } else {
      double target = uniform01(rng) * total;
      pick = n - 1;
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target) {
          pick = i;
          break;
        }
      }
    }
    centers.push_back(pts[pick]);
  }
  return centers;
}

}  // namespace detail

inline kmeans_result kmeans(const std::vector<std::vector<double>>& pts, int k,
                            rng_t& rng, int max_iters = 100) {
  const int n = static_cast<int>(pts.size());
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, #points]");
  const std::size_t dim = pts.empty() ? 0 : pts[0].size();
  auto centers = detail::seed_centroids(pts, k, rng);
  kmeans_result res;
  res.labels.assign(n, -1);
  for (int iter = 0; iter < max_iters; ++iter) {
    // Assignment: nearest centroid, ties to the lowest cluster index.
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = detail::sq_dist(pts[i], centers[0]);
      for (int c = 1; c < k; ++c) {
        double d = detail::sq_dist(pts[i], centers[c]);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (res.labels[i] != best) {
        res.labels[i] = best;
        changed = true;
      }
    }
    // Empty clusters grab the point farthest from its current centroid.
    for (int c = 0; c < k; ++c) {
      if (std::count(res.labels.begin(), res.labels.end(), c)) continue;
      int far = 0;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        double d = detail::sq_dist(pts[i], centers[res.labels[i]]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      res.labels[far] = c;
      changed = true;
    }
    // Update step: centroids = member means.
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      ++counts[res.labels[i]];
      for (std::size_t d = 0; d < dim; ++d) sums[res.labels[i]][d] += pts[i][d];
    }
    for (int c = 0; c < k; ++c)
      for (std::size_t d = 0; d < dim; ++d) centers[c][d] = sums[c][d] / counts[c];
    double obj = 0.0;
    for (int i = 0; i < n; ++i) obj += detail::sq_dist(pts[i], centers[res.labels[i]]);
    res.objective_history.push_back(obj);
    if (!changed) break;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Spectral clustering with eigengap model selection
// ---------------------------------------------------------------------------

// Largest gap between consecutive ascending eigenvalues; k = position of the
// gap (1-based), ties to the smallest k.
inline int eigengap_k(const std::vector<double>& values) {
  if (values.size() < 2)
    throw std::invalid_argument("eigengap needs at least two eigenvalues");
  int k = 1;
  double best = -1.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    double gap = std::abs(values[i] - values[i - 1]);
    if (gap > best) {
      best = gap;
      k = static_cast<int>(i);
    }
  }
  return k;
}

inline std::vector<std::vector<double>> graph_laplacian(
    const std::vector<std::vector<double>>& s) {
  const int n = static_cast<int>(s.size());
  std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    double deg = 0.0;
    for (int j = 0; j < n; ++j) {
      deg += s[i][j];
      l[i][j] = -s[i][j];
    }
    l[i][i] = deg - s[i][i];
  }
  return l;
}

// Unnormalized spectral clustering: eigendecompose L = D - S, choose k by
// the eigengap (unless overridden), embed each BS as its row across the k
// smallest eigenvectors, and run k-means on the rows.
inline cluster_set spectral_cluster(const std::vector<std::vector<double>>& s,
                                    const std::vector<double>& loads,
                                    int k_override, rng_t& rng, long epoch) {
  const int n = static_cast<int>(s.size());
  if (n == 1) return make_cluster_set({0}, loads, "spectral", epoch);
  auto eig = jacobi_eigen(graph_laplacian(s));
  int k = (k_override >= 1) ? std::min(k_override, n) : eigengap_k(eig.values);
  std::vector<std::vector<double>> rows(n, std::vector<double>(k, 0.0));
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < k; ++c) rows[i][c] = eig.vectors[c][i];
  auto km = kmeans(rows, k, rng);
  return make_cluster_set(km.labels, loads, "spectral", epoch);
}

// k-means directly on the real geometric embedding (load coordinate treated
// as an ordinary Euclidean axis; this groups same-load neighbors, which is
// the closest metric-space rendering of the signed similarity).
inline cluster_set kmeans_cluster(
    const std::vector<std::array<double, 3>>& embedding,
    const std::vector<double>& loads, int k, rng_t& rng, long epoch) {
  const int n = static_cast<int>(embedding.size());
  std::vector<std::vector<double>> pts(n);
  for (int i = 0; i < n; ++i)
    pts[i] = {embedding[i][0], embedding[i][1], embedding[i][2]};
  auto km = kmeans(pts, k, rng);
  return make_cluster_set(km.labels, loads, "kmeans", epoch);
}

// ---------------------------------------------------------------------------
// Peer-to-peer merge protocol
// ---------------------------------------------------------------------------

// Decentralized agglomeration. Every BS starts alone. Each round, every
// cluster looks at the other clusters whose head lies inside the union of
// its members' neighborhoods, scores them by the average joint similarity
// over *adjacent* member pairs only (non-adjacent similarity entries are
// never read), and proposes to its best-scoring candidate whose merged size
// fits the cap. A merge happens iff the two clusters proposed to each
// other. Stops after `rounds` rounds or a round with no merges.
inline cluster_set p2p_cluster(const similarity_graph& g,
                               const std::vector<double>& loads, int cmax,
                               int rounds, long epoch) {
  if (cmax < 1) throw std::invalid_argument("cluster size cap must be >= 1");
  const int n = static_cast<int>(g.s.size());
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  std::vector<std::vector<int>> groups(n);
  std::vector<int> heads(n);
  for (int i = 0; i < n; ++i) {
    groups[i] = {i};
    heads[i] = i;
  }
  auto alive = [&](int c) { return !groups[c].empty(); };
  for (int round = 0; round < rounds; ++round) {
    // Each live cluster ranks its candidates.
    std::vector<int> proposal(n, -1);
    for (int c = 0; c < n; ++c) {
      if (!alive(c)) continue;
      int best = -1;
      double best_score = -1.0;
      for (int d = 0; d < n; ++d) {
        if (d == c || !alive(d)) continue;
        if (static_cast<int>(groups[c].size() + groups[d].size()) > cmax)
          continue;
        // Reachability: the candidate's head must be a neighbor of one of
        // our members.
        bool reachable = false;
        for (int b : groups[c])
          if (g.nb.adj[b][heads[d]]) {
            reachable = true;
            break;
          }
        if (!reachable) continue;
        double sum = 0.0;
        int cnt = 0;
        for (int a : groups[c])
          for (int b : groups[d])
            if (g.nb.adj[a][b]) {
              sum += g.s[a][b];
              ++cnt;
            }
        if (cnt == 0) continue;
        double score = sum / cnt;
        if (score > best_score ||
            (score == best_score && best >= 0 && heads[d] < heads[best])) {
          best_score = score;
          best = d;
        }
      }
      proposal[c] = best;
    }
    // Mutual proposals merge; process in head order for determinism.
    bool merged_any = false;
    for (int c = 0; c < n; ++c) {
      int d = proposal[c];
      if (d < 0 || !alive(c) || !alive(d)) continue;
      if (proposal[d] != c || d <= c) continue;
      groups[c].insert(groups[c].end(), groups[d].begin(), groups[d].end());
      std::sort(groups[c].begin(), groups[c].end());
      groups[d].clear();
      int head = groups[c].front();
      for (int b : groups[c])
        if (loads[b] < loads[head]) head = b;
      heads[c] = head;
      merged_any = true;
    }
    if (!merged_any) break;
  }
  std::vector<int> final_labels(n, -1);
  int next = 0;
  for (int c = 0; c < n; ++c) {
    if (!alive(c)) continue;
    for (int b : groups[c]) final_labels[b] = next;
    ++next;
  }
  auto cs = make_cluster_set(final_labels, loads, "p2p", epoch);
  for (const auto& c : cs.members)
    if (static_cast<int>(c.size()) > cmax)
      throw invalid_state("peer-to-peer cluster exceeded the size cap");
  return cs;
}

// All-singletons partition (baselines and no-cluster learning).
inline cluster_set singleton_clusters(int n, const std::vector<double>& loads,
                                      long epoch) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return make_cluster_set(labels, loads, "none", epoch);
}

}  // namespace scnet
