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

#include "galvi/basis.h"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "Eigen/QR"

namespace galvi {

Basis Basis::Orthonormalize(Matrix raw, double drop_tol) {
  if (raw.rows() < 1 || raw.cols() < 1) {
    throw std::invalid_argument("Orthonormalize: basis must be at least 1x1");
  }
  if (!(drop_tol > 0.0)) {
    throw std::invalid_argument("Orthonormalize: drop_tol must be positive");
  }
  if (!raw.allFinite()) {
    throw std::invalid_argument("Orthonormalize: non-finite entry");
  }
  if ((raw.array() == 0.0).all()) throw EmptyBasis();

  Eigen::ColPivHouseholderQR<Matrix> qr(raw);
  const auto& r = qr.matrixR();
  const Eigen::Index diag = std::min(raw.rows(), raw.cols());
  const double largest = std::abs(r(0, 0));
  Eigen::Index rank = 0;
  while (rank < diag && std::abs(r(rank, rank)) > drop_tol * largest) ++rank;
  if (rank == 0) throw EmptyBasis();

  Matrix ortho = qr.householderQ() * Matrix::Identity(raw.rows(), rank);
  return Basis(std::move(raw), std::move(ortho), drop_tol);
}

Basis Basis::Identity(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("Basis::Identity: n must be >= 1");
  return Basis(Matrix::Identity(n, n), Matrix::Identity(n, n),
               kDefaultDropTolerance);
}

Vector Basis::ProjectSpan(const Vector& z) const {
  CheckDimension(z.size(), dim(), "ProjectSpan");
  return ortho_ * (ortho_.transpose() * z);
}

Vector Basis::NullResidual(const Vector& v) const {
  CheckDimension(v.size(), dim(), "NullResidual");
  return v - ortho_ * (ortho_.transpose() * v);
}

double Basis::RepresentationError(const Vector& z) const {
  return NullResidual(z).norm();
}

}  // namespace galvi
