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

#ifndef GALVI_AFFINE_OPERATOR_H_
#define GALVI_AFFINE_OPERATOR_H_

#include <cstdint>

#include "galvi/types.h"

namespace galvi {

// Step size and contraction factor of the map x -> x - alpha F(x) for a
// beta-strongly monotone, L-Lipschitz F. With alpha = beta / L^2 the map is
// gamma-Lipschitz with gamma = sqrt(1 - beta^2 / L^2).
struct ContractionParams {
  double beta = 0.0;
  double lipschitz = 0.0;
  double alpha = 0.0;
  double gamma = 1.0;
};

// An operator F: R^n -> R^n together with its monotonicity modulus beta and
// Lipschitz constant L. The iterative solvers only ever evaluate F, so
// nonlinear operators can plug in by declaring (beta, L) themselves.
class OperatorInterface {
 public:
  virtual ~OperatorInterface() = default;

  virtual Eigen::Index dim() const = 0;
  virtual Vector Apply(const Vector& x) const = 0;
  virtual double beta() const = 0;
  virtual double lipschitz() const = 0;
};

// F(x) = Mx + q with dense M. beta and L are estimated at construction
// unless the caller supplies them.
class AffineOperator final : public OperatorInterface {
 public:
  AffineOperator(Matrix m, Vector q);
  // Skips estimation. Requires 0 <= beta <= lipschitz for monotone use; a
  // negative beta is allowed and simply marks the operator non-monotone.
  AffineOperator(Matrix m, Vector q, double beta, double lipschitz);

  Eigen::Index dim() const override { return q_.size(); }
  Vector Apply(const Vector& x) const override;
  double beta() const override { return beta_; }
  double lipschitz() const override { return lipschitz_; }

  const Matrix& m() const { return m_; }
  const Vector& q() const { return q_; }

 private:
  void Validate() const;

  Matrix m_;
  Vector q_;
  double beta_ = 0.0;
  double lipschitz_ = 0.0;
};

// lambda_min of the symmetric part (M + M^T) / 2. Negative values mean F is
// not monotone. Dense symmetric eigendecomposition up to n = 2000, Lanczos
// above that (rounded down by the Ritz residual).
double MonotoneModulus(const Matrix& m);

// Upper estimate of the spectral norm ||M||_2: Krylov (Lanczos) iteration on
// M^T M, stopped at relative residual 1e-12 and rounded up by the final
// residual.
double LipschitzConstant(const Matrix& m);

// Throws NotStronglyMonotone if MonotoneModulus(m) <= 0.
ContractionParams ComputeContractionParams(const Matrix& m);

// Same, from the declared constants of an arbitrary operator.
ContractionParams ComputeContractionParams(const OperatorInterface& op);

// Lipschitz bound sqrt(1 - 2 alpha beta + alpha^2 L^2) of x - alpha F(x) for
// an arbitrary step. May be >= 1.
double ContractionFactor(double beta, double lipschitz, double alpha);

// ceil(ln(eps) / ln(gamma)): iterations that shrink the distance to the
// fixed point by a factor eps. Requires gamma and eps in (0, 1).
std::int64_t IterationBound(double gamma, double eps);

}  // namespace galvi

#endif  // GALVI_AFFINE_OPERATOR_H_
