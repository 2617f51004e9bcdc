#pragma once

// Dense symmetric eigensolver: cyclic Jacobi rotations with eigenvalues
// returned in ascending order alongside their eigenvectors. Matrices here
// are tiny (tens of base stations), so the quadratic sweep cost is free and
// the implementation stays dependency-free.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "scnet/common.hpp"

namespace scnet {

struct eigen_result {
  std::vector<double> values;                 // ascending
  std::vector<std::vector<double>> vectors;   // vectors[i] pairs with values[i]
};

namespace detail {

inline double offdiag_norm(const std::vector<std::vector<double>>& a) {
  double s = 0.0;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += 2.0 * a[i][j] * a[i][j];
  return std::sqrt(s);
}

}  // namespace detail

inline eigen_result jacobi_eigen(std::vector<std::vector<double>> a,
                                 double tol = 1e-10, int max_sweeps = 100) {
  const int n = static_cast<int>(a.size());
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("eigensolver needs a square matrix");
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;

  double off = detail::offdiag_norm(a);
  int sweep = 0;
  while (off >= tol) {
    if (++sweep > max_sweeps)
      throw numerical_failure("eigensolver did not converge", off);
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[p][q];
        if (apq == 0.0) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        // Rotate rows/columns p and q of A.
        double app = a[p][p], aqq = a[q][q];
        a[p][p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        a[q][q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        a[p][q] = a[q][p] = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = a[p][k] = c * akp - s * akq;
          a[k][q] = a[q][k] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
    off = detail::offdiag_norm(a);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a[i][i] < a[j][j]; });
  eigen_result res;
  res.values.resize(n);
  res.vectors.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    res.values[i] = a[order[i]][order[i]];
    for (int k = 0; k < n; ++k) res.vectors[i][k] = v[k][order[i]];
  }
  return res;
}

}  // namespace scnet
