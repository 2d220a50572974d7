// Copyright 2026 The galvi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Independent reference computations shared by the tests. Nothing here calls
// into the solvers it is used to check.

#ifndef GALVI_TESTS_TEST_UTIL_H_
#define GALVI_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "Eigen/Dense"
#include "galvi/types.h"

namespace galvi::testing {

inline Matrix RandomMatrix(Eigen::Index rows, Eigen::Index cols,
                           std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = normal(rng);
  }
  return out;
}

inline Vector RandomVector(Eigen::Index n, std::mt19937_64& rng) {
  return RandomMatrix(n, 1, rng);
}

// shift * I + G^T G / n + skew, which has monotone modulus >= shift.
inline Matrix RandomPositiveDefinite(Eigen::Index n, double shift,
                                     std::mt19937_64& rng) {
  const Matrix g = RandomMatrix(n, n, rng);
  const Matrix h = RandomMatrix(n, n, rng);
  Matrix m = g.transpose() * g / static_cast<double>(n) +
             (h - h.transpose()) / (2.0 * std::sqrt(static_cast<double>(n)));
  m.diagonal().array() += shift;
  return m;
}

// Largest singular value by a full SVD.
inline double DenseSpectralNorm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

// Smallest eigenvalue of the symmetric part, through the general
// (nonsymmetric) eigensolver rather than the symmetric one.
inline double DenseMinSymmetricEigenvalue(const Matrix& m) {
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::EigenSolver<Matrix> eig(sym, false);
  return eig.eigenvalues().real().minCoeff();
}

// Solves LCP(q, M) over the nonnegative orthant by enumerating all 2^n
// active sets. For positive definite M the solution is unique.
inline std::optional<Vector> EnumerateLcp(const Matrix& m, const Vector& q,
                                          double tol = 1e-12) {
  const Eigen::Index n = q.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<Eigen::Index> basic;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) basic.push_back(i);
    }
    Vector x = Vector::Zero(n);
    if (!basic.empty()) {
      const Eigen::Index b = static_cast<Eigen::Index>(basic.size());
      Matrix mbb(b, b);
      Vector qb(b);
      for (Eigen::Index r = 0; r < b; ++r) {
        qb(r) = q(basic[r]);
        for (Eigen::Index c = 0; c < b; ++c) mbb(r, c) = m(basic[r], basic[c]);
      }
      const Vector xb = mbb.fullPivLu().solve(-qb);
      for (Eigen::Index r = 0; r < b; ++r) x(basic[r]) = xb(r);
    }
    const Vector w = m * x + q;
    if (x.minCoeff() >= -tol && w.minCoeff() >= -tol &&
        std::abs(x.dot(w)) <= tol * (1.0 + x.norm() * w.norm())) {
      return x;
    }
  }
  return std::nullopt;
}

}  // namespace galvi::testing

#endif  // GALVI_TESTS_TEST_UTIL_H_
