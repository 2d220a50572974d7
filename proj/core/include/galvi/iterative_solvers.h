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

// Fixed-point solvers for VI(F, C) over a separable cone C:
//
//   exact       x <- P_C(x - alpha F(x))
//   rearranged  x <- P_C(z),  z <- x - alpha F(x)            (same x-sequence)
//   bertsekas   x <- P_{C cap span(Phi)}(x - alpha F(x))
//   galerkin    x <- P_C(z),  z <- P_Phi(x - alpha F(x))
//
// With alpha = beta / L^2 every update is a gamma-contraction, gamma =
// sqrt(1 - beta^2 / L^2), so each iteration has a unique fixed point and the
// distance to it shrinks by at least gamma per step. All x-iterates come out
// of a projection onto C and are therefore exactly feasible.

#ifndef GALVI_ITERATIVE_SOLVERS_H_
#define GALVI_ITERATIVE_SOLVERS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "galvi/affine_operator.h"
#include "galvi/basis.h"
#include "galvi/cone.h"
#include "galvi/types.h"

namespace galvi {

struct SolveConfig {
  // Step size. When unset, alpha = beta / L^2 and the operator must be
  // strongly monotone. When set, the solver runs even if the resulting map
  // is not provably contractive and clears SolveReport::guaranteed.
  std::optional<double> alpha_override;
  // Stop once the fixed-point step ||next - current|| drops to tol.
  double tol = 1e-10;
  // Defaults to 100 * IterationBound(gamma, 1e-10) when gamma < 1, else 10000.
  std::optional<std::int64_t> max_iter;
  double dykstra_tol = 1e-12;
  std::int64_t dykstra_max_iter = 10000;
  double cert_tol = 1e-8;
  // Keep every x-iterate and fill SolveReport::trace.
  bool record_iterates = false;
  // Starting points. Defaults: x0 = P_C(0), z0 = 0.
  std::optional<Vector> x0;
  std::optional<Vector> z0;

  // Throws std::invalid_argument on non-positive tolerances or limits.
  void Validate() const;
};

// One line of the iterate history.
struct TraceEntry {
  std::int64_t t = 0;
  double step_norm = 0.0;
  double distance_to_final = 0.0;
};

// Residual epsilon with -F(x) + epsilon in N_C(x). For a Galerkin fixed
// point epsilon lies in null(Phi^T); null_space_violation measures how far.
struct OptimalityCertificate {
  Vector epsilon;
  bool normal_cone_ok = false;
  double null_space_violation = 0.0;
  double complementarity_gap = 0.0;

  bool Valid(double tol) const {
    return normal_cone_ok &&
           null_space_violation <= tol * (1.0 + epsilon.norm());
  }
};

struct IpmStats {
  double mu = 0.0;                    // average complementarity x_i s_i
  double feasibility_residual = 0.0;  // ||s - (N x + r)||_inf
  bool polished = false;              // the active-set finish was accepted
};

struct SolveReport {
  Vector x;
  std::optional<Vector> z;
  std::int64_t iterations = 0;
  double final_step_norm = 0.0;
  double alpha = 0.0;
  double gamma = 1.0;
  // False when alpha_override gave gamma >= 1 (no convergence guarantee).
  bool guaranteed = true;
  std::optional<double> apriori_bound;
  std::optional<OptimalityCertificate> certificate;
  bool converged = false;
  double seconds = 0.0;
  std::optional<IpmStats> ipm;

  // Filled when SolveConfig::record_iterates is set. iterates[0] is the
  // starting point.
  std::vector<Vector> iterates;
  std::vector<TraceEntry> trace;
};

// Resolved step size and contraction factor for a solve.
struct StepPlan {
  double alpha = 0.0;
  double gamma = 1.0;
  bool guaranteed = false;
};

// Throws NotStronglyMonotone when no override is given and beta <= 0.
StepPlan PlanStep(const OperatorInterface& op, const SolveConfig& cfg);

// The projection method x <- P_C(x - alpha F(x)) from x0 = P_C(0).
SolveReport SolveExact(const OperatorInterface& op, const SeparableCone& cone,
                       const SolveConfig& cfg = {});

// The same method written in two variables, x = P_C(z), z = x - alpha F(x).
// Started from z0 = x0 it produces the same x-sequence as SolveExact.
SolveReport SolveRearranged(const OperatorInterface& op,
                            const SeparableCone& cone,
                            const SolveConfig& cfg = {});

// Euclidean projection of z onto C cap span(Phi) by Dykstra's alternating
// projections. The result is exactly in C. If the iterates have not settled
// after max_iter sweeps, the projection is finished by an active-set NNLS
// solve in basis coordinates; IntersectionProjectionFailed is thrown only if
// that fails too.
Vector ProjectIntersection(const SeparableCone& cone, const Basis& basis,
                           const Vector& z, double dykstra_tol = 1e-12,
                           std::int64_t dykstra_max_iter = 10000);

// Projection onto C cap span(Phi) each step. If `reference` (a solution of
// the unrestricted problem) is given, apriori_bound is set to
// ||P_{C cap span}(reference) - reference|| / (1 - gamma).
SolveReport SolveBertsekas(const OperatorInterface& op,
                           const SeparableCone& cone, const Basis& basis,
                           const SolveConfig& cfg = {},
                           const std::optional<Vector>& reference = {});

// x = P_C(z), z <- P_Phi(x - alpha F(x)) from z0 = 0. Returns x in C and z in
// span(Phi) with x = P_C(z) exactly, and an optimality certificate.
SolveReport SolveGalerkin(const OperatorInterface& op,
                          const SeparableCone& cone, const Basis& basis,
                          const SolveConfig& cfg = {});

// epsilon = (z_bar - (x_bar - alpha F(x_bar))) / alpha. The normal-cone test
// is InNormalCone(cone, x_bar, z_bar - x_bar, cert_tol); an infeasible x_bar
// fails it instead of throwing.
OptimalityCertificate Certify(const OperatorInterface& op,
                              const SeparableCone& cone, const Basis& basis,
                              const Vector& x_bar, const Vector& z_bar,
                              double alpha, double cert_tol);

// Side-by-side a-priori bounds and realized errors of the two Galerkin
// approximations against the exact solution (x*, z* = x* - alpha F(x*)).
struct BoundComparison {
  double alpha = 0.0;
  double gamma = 1.0;
  bool exact_converged = false;

  // ||P_{C cap span}(x*) - x*|| and ||z* - P_Phi z*||.
  double representation_bertsekas = 0.0;
  double representation_new = 0.0;
  double bound_bertsekas = 0.0;  // representation_bertsekas / (1 - gamma)
  double bound_new = 0.0;        // representation_new / (1 - gamma)

  double err_bertsekas = 0.0;  // ||x_hat - x*||
  double err_new_x = 0.0;      // ||x_bar - x*||
  double err_new_z = 0.0;      // ||z_bar - z*||

  bool bertsekas_ok = false;
  bool new_x_ok = false;
  bool new_z_ok = false;

  // Set when the projection onto C cap span(Phi) failed; the Bertsekas
  // fields are then NaN and bertsekas_ok is false.
  std::optional<std::string> bertsekas_error;
  std::optional<std::string> galerkin_error;

  std::int64_t iterations_exact = 0;
  std::int64_t iterations_bertsekas = 0;
  std::int64_t iterations_galerkin = 0;
  std::optional<OptimalityCertificate> certificate;

  bool AllOk() const { return bertsekas_ok && new_x_ok && new_z_ok; }
};

// `verdict_tol` is the additive slack in "actual <= bound + verdict_tol".
// Requires a strongly monotone operator (or alpha_override with gamma < 1).
BoundComparison BoundReport(const OperatorInterface& op,
                            const SeparableCone& cone, const Basis& basis,
                            const SolveConfig& cfg = {},
                            double verdict_tol = 1e-8);

}  // namespace galvi

#endif  // GALVI_ITERATIVE_SOLVERS_H_
