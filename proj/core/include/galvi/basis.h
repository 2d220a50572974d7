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

#ifndef GALVI_BASIS_H_
#define GALVI_BASIS_H_

#include <utility>

#include "galvi/types.h"

namespace galvi {

inline constexpr double kDefaultDropTolerance = 1e-10;

// A basis matrix Phi (n x k) and an orthonormal factor Q (n x k') spanning
// the same subspace. k' < k when columns were numerically dependent.
//
// The projector onto span(Phi) is applied as Q (Q^T z) and never formed as
// an n x n matrix, so each application costs O(n k').
class Basis {
 public:
  // Rank-revealing QR with column pivoting. Columns whose pivot falls below
  // drop_tol times the largest pivot are discarded. Throws EmptyBasis if
  // `raw` has no nonzero entry.
  static Basis Orthonormalize(Matrix raw,
                              double drop_tol = kDefaultDropTolerance);

  // span(Phi) = R^n.
  static Basis Identity(Eigen::Index n);

  Eigen::Index dim() const { return ortho_.rows(); }
  Eigen::Index rank() const { return ortho_.cols(); }
  double drop_tol() const { return drop_tol_; }
  const Matrix& raw() const { return raw_; }
  const Matrix& ortho() const { return ortho_; }

  // Q Q^T z.
  Vector ProjectSpan(const Vector& z) const;
  // v - Q Q^T v, the component in null(Phi^T).
  Vector NullResidual(const Vector& v) const;
  // ||z - Q Q^T z||.
  double RepresentationError(const Vector& z) const;

 private:
  Basis(Matrix raw, Matrix ortho, double drop_tol)
      : raw_(std::move(raw)), ortho_(std::move(ortho)), drop_tol_(drop_tol) {}

  Matrix raw_;
  Matrix ortho_;
  double drop_tol_;
};

}  // namespace galvi

#endif  // GALVI_BASIS_H_
