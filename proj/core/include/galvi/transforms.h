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

// Problem conversions that bring a VI into a form the solvers accept: a
// cone-constrained VI read as a complementarity problem, equality
// constraints folded in through Lagrange multipliers, and a polyhedral
// feasible set {x : Ax + b >= 0} turned into a separable cone with slacks.
//
// Composition used by PolyhedronToCone. Introduce s = Ax + b, s >= 0, so the
// feasible set over (s, x) is the cone R+^m x R^n intersected with the
// equality Ax - s + b = 0. Multipliers lambda for that equality, ordered
// (s, x, lambda), give the operator
//
//   G(s, x, lambda) = ( lambda,  Mx + q - A^T lambda,  Ax - s + b )
//
// over R+^m x R^n x R^m, i.e. the matrix
//
//   [[ 0,  0,   I ],
//    [ 0,  M, -A^T],
//    [-I,  A,   0 ]]   with offset (0, q, b).
//
// The sign of the multiplier block is chosen so that the skew blocks cancel
// in the symmetric part, which is diag(0, (M + M^T)/2, 0). Reading the CP:
// s >= 0, lambda >= 0, s'lambda = 0, Mx + q = A^T lambda, s = Ax + b, which
// are the KKT conditions of the original VI.

#ifndef GALVI_TRANSFORMS_H_
#define GALVI_TRANSFORMS_H_

#include <memory>
#include <string>
#include <vector>

#include "galvi/affine_operator.h"
#include "galvi/cone.h"
#include "galvi/types.h"

namespace galvi {

// CP(F, K): find x in K with F(x) in K* and x'F(x) = 0.
struct ComplementarityProblem {
  std::shared_ptr<const OperatorInterface> op;
  SeparableCone cone;

  // IsComplementary(cone, x, F(x), tol).
  bool IsSolution(const Vector& x, double tol) const;
};

// VI(F, K) over a cone and CP(F, K) have the same solutions; this attaches
// the complementarity reading to the same data.
ComplementarityProblem ViToCp(std::shared_ptr<const OperatorInterface> op,
                              SeparableCone cone);

struct VariableSpan {
  std::string name;
  Eigen::Index offset = 0;
  Eigen::Index length = 0;
};

struct ConicProgramLayout {
  SeparableCone cone;
  AffineOperator op;
  std::vector<VariableSpan> variable_map;
  // beta > 0 for the assembled matrix. Usually false once multipliers are
  // added: the contraction solvers then need alpha_override, or use the
  // interior-point path, which only needs monotonicity.
  bool strongly_monotone = false;

  // Throws std::out_of_range for an unknown name.
  const VariableSpan& Span(const std::string& name) const;
  Vector Extract(const Vector& full, const std::string& name) const;
};

// VI(F, K cap {y : Ay = b}) as VI(F', K x R^m) over (y, lambda) with
// F'(y, lambda) = (My + q - A^T lambda, Ay - b).
ConicProgramLayout EliminateEqualities(const AffineOperator& op,
                                       const Matrix& a, const Vector& b,
                                       const SeparableCone& cone);

// VI(Mx + q, {x : Ax + b >= 0}).
struct PolyhedralVI {
  Matrix m;
  Vector q;
  Matrix a;
  Vector b;

  void Validate() const;
};

// Variables (s, x, lambda) over R+^m x R^n x R^m; see the header comment.
ConicProgramLayout PolyhedronToCone(const PolyhedralVI& problem);

}  // namespace galvi

#endif  // GALVI_TRANSFORMS_H_
