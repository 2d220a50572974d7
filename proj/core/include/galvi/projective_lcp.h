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

// The Galerkin fixed point x = P_K(P_Phi((I - alpha M) x - alpha q)) is the
// solution of the complementarity problem CP(N x + r, K) with
//
//   N = I - P_Phi + alpha P_Phi M,    r = alpha P_Phi q.
//
// With P_Phi = Q Q^T this is N = I + Q W, W = alpha Q^T M - Q^T: identity
// plus rank k'. An interior-point Newton step on D + N then reduces, through
// the Woodbury identity, to a k' x k' solve, so one iteration costs
// O(n k'^2) instead of O(n^3).

#ifndef GALVI_PROJECTIVE_LCP_H_
#define GALVI_PROJECTIVE_LCP_H_

#include <cstdint>

#include "galvi/affine_operator.h"
#include "galvi/basis.h"
#include "galvi/cone.h"
#include "galvi/iterative_solvers.h"
#include "galvi/types.h"

namespace galvi {

struct IpmConfig {
  double mu_tol = 1e-10;
  double feas_tol = 1e-10;
  std::int64_t max_iter = 200;
  double step_fraction = 0.99;  // fraction-to-boundary
  double sigma = 0.1;           // centering
  // After convergence, guess the active set from x_i < s_i and solve the
  // reduced equations exactly; kept only if it stays feasible.
  bool polish = true;

  void Validate() const;
};

class ProjectiveLcp {
 public:
  // One k' x n by n x n product; requires alpha > 0.
  static ProjectiveLcp Build(const AffineOperator& op, const Basis& basis,
                             double alpha);

  Eigen::Index n() const { return q_.rows(); }
  Eigen::Index rank() const { return q_.cols(); }
  double alpha() const { return alpha_; }
  const Matrix& q_factor() const { return q_; }
  const Matrix& w() const { return w_; }
  const Vector& r() const { return r_; }

  // x + Q (W x), O(n k').
  Vector ApplyN(const Vector& x) const;

  // Dense I + Q W. Only for cross-checks on small instances.
  Matrix Materialize() const;

 private:
  ProjectiveLcp(Matrix q, Matrix w, Vector r, double alpha)
      : q_(std::move(q)), w_(std::move(w)), r_(std::move(r)), alpha_(alpha) {}

  Matrix q_;
  Matrix w_;
  Vector r_;
  double alpha_;
};

// lambda_min((N + N^T) / 2) from the dense matrix. Throws
// std::invalid_argument for n > 2000.
double VerifyPd(const ProjectiveLcp& plcp);

// (diag(d) + Q W)^{-1} rhs via
//   u = D^{-1} rhs,  (I + W D^{-1} Q) y = W u,  x = u - D^{-1} Q y.
// d must be strictly positive. Throws IpmBreakdown if the k x k capacitance
// matrix is singular.
Vector SolveDiagPlusLowRank(const Vector& d, const Matrix& q, const Matrix& w,
                            const Vector& rhs);

// Primal-dual path following for CP(N x + r, K). Nonnegative coordinates are
// complementarity pairs (x_i, s_i); free coordinates impose (N x + r)_i = 0.
// Zero segments are rejected. Returns a NonConverged report (converged =
// false) after max_iter iterations; throws IpmBreakdown on a numerical
// failure of the Newton system.
SolveReport SolveIpm(const ProjectiveLcp& plcp, const SeparableCone& cone,
                     const IpmConfig& cfg = {});

}  // namespace galvi

#endif  // GALVI_PROJECTIVE_LCP_H_
