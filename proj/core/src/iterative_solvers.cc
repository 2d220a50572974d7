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

#include "galvi/iterative_solvers.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "Eigen/QR"

namespace galvi {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::int64_t ResolveMaxIter(const SolveConfig& cfg, double gamma) {
  if (cfg.max_iter) return *cfg.max_iter;
  if (gamma <= 0.0) return 100;
  if (gamma < 1.0) return 100 * IterationBound(gamma, 1e-10);
  return 10000;
}

// Fills report.trace from report.iterates and the final x.
void BuildTrace(SolveReport& report, const std::vector<double>& steps) {
  report.trace.clear();
  report.trace.reserve(report.iterates.size());
  for (std::size_t t = 0; t < report.iterates.size(); ++t) {
    report.trace.push_back({static_cast<std::int64_t>(t), steps[t],
                            (report.iterates[t] - report.x).norm()});
  }
}

// Runs x <- update(x) until the step is at most tol. Used by the exact and
// Bertsekas methods, whose only difference is the projection.
template <typename Update>
SolveReport IterateX(Vector x, const SolveConfig& cfg, const StepPlan& plan,
                     Update&& update) {
  const auto start = Clock::now();
  SolveReport report;
  report.alpha = plan.alpha;
  report.gamma = plan.gamma;
  report.guaranteed = plan.guaranteed;

  std::vector<double> steps;
  if (cfg.record_iterates) {
    report.iterates.push_back(x);
    steps.push_back(0.0);
  }
  const std::int64_t max_iter = ResolveMaxIter(cfg, plan.gamma);
  for (std::int64_t t = 1; t <= max_iter; ++t) {
    Vector next = update(x);
    const double step = (next - x).norm();
    x = std::move(next);
    report.iterations = t;
    report.final_step_norm = step;
    if (cfg.record_iterates) {
      report.iterates.push_back(x);
      steps.push_back(step);
    }
    if (step <= cfg.tol) {
      report.converged = true;
      break;
    }
  }
  report.x = std::move(x);
  if (cfg.record_iterates) BuildTrace(report, steps);
  report.seconds = SecondsSince(start);
  return report;
}

// Runs x = P_C(z), z <- project(x - alpha F(x)) until the z-step is at most
// tol. `project` is the identity for the rearranged exact method and P_Phi
// for the Galerkin method.
template <typename SubspaceProjection>
SolveReport IterateXZ(const OperatorInterface& op, const SeparableCone& cone,
                      Vector z, const SolveConfig& cfg, const StepPlan& plan,
                      SubspaceProjection&& project) {
  const auto start = Clock::now();
  SolveReport report;
  report.alpha = plan.alpha;
  report.gamma = plan.gamma;
  report.guaranteed = plan.guaranteed;

  Vector x = Project(cone, z);
  std::vector<double> steps;
  if (cfg.record_iterates) {
    report.iterates.push_back(x);
    steps.push_back(0.0);
  }
  const std::int64_t max_iter = ResolveMaxIter(cfg, plan.gamma);
  for (std::int64_t t = 1; t <= max_iter; ++t) {
    Vector next = project(Vector(x - plan.alpha * op.Apply(x)));
    const double step = (next - z).norm();
    z = std::move(next);
    x = Project(cone, z);
    report.iterations = t;
    report.final_step_norm = step;
    if (cfg.record_iterates) {
      report.iterates.push_back(x);
      steps.push_back(step);
    }
    if (step <= cfg.tol) {
      report.converged = true;
      break;
    }
  }
  report.x = std::move(x);
  report.z = std::move(z);
  if (cfg.record_iterates) BuildTrace(report, steps);
  report.seconds = SecondsSince(start);
  return report;
}

Vector StartX(const SeparableCone& cone, const SolveConfig& cfg) {
  if (cfg.x0) {
    CheckDimension(cfg.x0->size(), cone.dim(), "SolveConfig::x0");
    return Project(cone, *cfg.x0);
  }
  return Project(cone, Vector::Zero(cone.dim()));
}

Vector StartZ(const SeparableCone& cone, const SolveConfig& cfg) {
  if (cfg.z0) {
    CheckDimension(cfg.z0->size(), cone.dim(), "SolveConfig::z0");
    return *cfg.z0;
  }
  return Vector::Zero(cone.dim());
}

// Lawson-Hanson active set for min ||A lambda - b|| over lambda >= 0.
// Returns nullopt if the iteration limit is hit.
std::optional<Vector> Nnls(const Matrix& a, const Vector& b, double tol) {
  const Eigen::Index m = a.cols();
  Vector lambda = Vector::Zero(m);
  std::vector<bool> in_set(static_cast<std::size_t>(m), false);
  std::vector<Eigen::Index> active;

  auto solve_on_set = [&] {
    Matrix sub(a.rows(), static_cast<Eigen::Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j) sub.col(j) = a.col(active[j]);
    return Vector(sub.completeOrthogonalDecomposition().solve(b));
  };

  const std::int64_t max_outer = 3 * m + 10;
  for (std::int64_t outer = 0; outer < max_outer; ++outer) {
    const Vector w = a.transpose() * (b - a * lambda);
    Eigen::Index best = -1;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (!in_set[j] && w(j) > tol && (best < 0 || w(j) > w(best))) best = j;
    }
    if (best < 0) return lambda;
    in_set[best] = true;
    active.push_back(best);

    for (std::int64_t inner = 0; inner <= m; ++inner) {
      const Vector trial = solve_on_set();
      double step = 1.0;
      for (std::size_t j = 0; j < active.size(); ++j) {
        if (trial(j) <= 0.0) {
          const double cur = lambda(active[j]);
          step = std::min(step, cur / (cur - trial(j)));
        }
      }
      for (std::size_t j = 0; j < active.size(); ++j) {
        lambda(active[j]) += step * (trial(j) - lambda(active[j]));
      }
      if (step >= 1.0) break;
      std::vector<Eigen::Index> kept;
      for (Eigen::Index j : active) {
        if (lambda(j) > 0.0) {
          kept.push_back(j);
        } else {
          lambda(j) = 0.0;
          in_set[j] = false;
        }
      }
      active.swap(kept);
    }
  }
  return std::nullopt;
}

// Exact projection onto C cap span(Q) for a separable cone. With z = Q c0 +
// (residual), the set is {Q c : G c >= 0} where G holds the rows of Q on
// nonnegative coordinates (and +-rows on zero ones). By the Moreau
// decomposition c = c0 + G^T lambda with lambda the NNLS solution of
// min ||G^T lambda + c0||, lambda >= 0.
std::optional<Vector> ProjectPolyhedralCone(const SeparableCone& cone,
                                            const Basis& basis,
                                            const Vector& z, double tol) {
  const Matrix& ortho = basis.ortho();
  std::vector<Eigen::Index> rows;
  std::vector<double> signs;
  for (Eigen::Index i = 0; i < cone.dim(); ++i) {
    const SegmentKind kind = cone.KindAt(i);
    if (kind == SegmentKind::kFree) continue;
    rows.push_back(i);
    signs.push_back(1.0);
    if (kind == SegmentKind::kZero) {
      rows.push_back(i);
      signs.push_back(-1.0);
    }
  }
  const Vector c0 = ortho.transpose() * z;
  Matrix gt(ortho.cols(), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    gt.col(j) = signs[j] * ortho.row(rows[j]).transpose();
  }
  const auto lambda = Nnls(gt, -c0, tol * (1.0 + c0.norm()));
  if (!lambda) return std::nullopt;
  return Project(cone, ortho * (c0 + gt * *lambda));
}

void CheckShapes(const OperatorInterface& op, const SeparableCone& cone) {
  CheckDimension(op.dim(), cone.dim(), "operator vs cone");
}

void CheckShapes(const OperatorInterface& op, const SeparableCone& cone,
                 const Basis& basis) {
  CheckShapes(op, cone);
  CheckDimension(basis.dim(), cone.dim(), "basis vs cone");
}

}  // namespace

void SolveConfig::Validate() const {
  if (alpha_override && !(*alpha_override > 0.0)) {
    throw std::invalid_argument("alpha_override must be positive");
  }
  if (!(tol > 0.0) || !(dykstra_tol > 0.0) || !(cert_tol > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if ((max_iter && *max_iter < 1) || dykstra_max_iter < 1) {
    throw std::invalid_argument("iteration limits must be >= 1");
  }
}

StepPlan PlanStep(const OperatorInterface& op, const SolveConfig& cfg) {
  cfg.Validate();
  if (cfg.alpha_override) {
    const double alpha = *cfg.alpha_override;
    const double gamma = ContractionFactor(op.beta(), op.lipschitz(), alpha);
    return {alpha, gamma, op.beta() > 0.0 && gamma < 1.0};
  }
  const ContractionParams params = ComputeContractionParams(op);
  return {params.alpha, params.gamma, true};
}

SolveReport SolveExact(const OperatorInterface& op, const SeparableCone& cone,
                       const SolveConfig& cfg) {
  CheckShapes(op, cone);
  const StepPlan plan = PlanStep(op, cfg);
  return IterateX(StartX(cone, cfg), cfg, plan, [&](const Vector& x) {
    return Project(cone, x - plan.alpha * op.Apply(x));
  });
}

SolveReport SolveRearranged(const OperatorInterface& op,
                            const SeparableCone& cone,
                            const SolveConfig& cfg) {
  CheckShapes(op, cone);
  const StepPlan plan = PlanStep(op, cfg);
  // z0 = x0 gives P_C(z0) = x0 since x0 is already in C.
  Vector z0 = cfg.z0 ? StartZ(cone, cfg) : StartX(cone, cfg);
  return IterateXZ(op, cone, std::move(z0), cfg, plan,
                   [](Vector v) { return v; });
}

Vector ProjectIntersection(const SeparableCone& cone, const Basis& basis,
                           const Vector& z, double dykstra_tol,
                           std::int64_t dykstra_max_iter) {
  CheckDimension(z.size(), cone.dim(), "ProjectIntersection");
  CheckDimension(basis.dim(), cone.dim(), "ProjectIntersection basis");
  if (!(dykstra_tol > 0.0) || dykstra_max_iter < 1) {
    throw std::invalid_argument("ProjectIntersection: bad tolerance or limit");
  }
  // Dykstra with the subspace first and the cone last, so the returned point
  // is exactly in C. The subspace correction is kept for symmetry even though
  // it is not needed for a linear subspace.
  Vector x = z;
  Vector p = Vector::Zero(z.size());
  Vector q = Vector::Zero(z.size());
  Vector y(z.size());
  Vector next(z.size());
  Vector coeff(basis.rank());
  const Matrix& ortho = basis.ortho();
  for (std::int64_t it = 0; it < dykstra_max_iter; ++it) {
    next = x + p;
    coeff.noalias() = ortho.transpose() * next;
    y.noalias() = ortho * coeff;
    p = next - y;
    next = Project(cone, y + q);
    q += y - next;
    const double move = (next - x).norm();
    x.swap(next);
    if (move <= dykstra_tol * (1.0 + x.norm())) return x;
  }
  // Dykstra is linear with a rate set by the angle between the cone and the
  // subspace and can be very slow. Finish with the finite method.
  if (auto exact = ProjectPolyhedralCone(cone, basis, z, dykstra_tol)) {
    return *std::move(exact);
  }
  throw IntersectionProjectionFailed(
      "Dykstra projection onto C cap span(Phi) did not converge in " +
      std::to_string(dykstra_max_iter) + " sweeps");
}

SolveReport SolveBertsekas(const OperatorInterface& op,
                           const SeparableCone& cone, const Basis& basis,
                           const SolveConfig& cfg,
                           const std::optional<Vector>& reference) {
  CheckShapes(op, cone, basis);
  const StepPlan plan = PlanStep(op, cfg);
  auto project_hat = [&](const Vector& v) {
    return ProjectIntersection(cone, basis, v, cfg.dykstra_tol,
                               cfg.dykstra_max_iter);
  };
  SolveReport report =
      IterateX(project_hat(StartX(cone, cfg)), cfg, plan, [&](const Vector& x) {
        return project_hat(x - plan.alpha * op.Apply(x));
      });
  if (reference && plan.gamma < 1.0) {
    CheckDimension(reference->size(), cone.dim(), "reference solution");
    report.apriori_bound =
        (project_hat(*reference) - *reference).norm() / (1.0 - plan.gamma);
  }
  return report;
}

SolveReport SolveGalerkin(const OperatorInterface& op,
                          const SeparableCone& cone, const Basis& basis,
                          const SolveConfig& cfg) {
  CheckShapes(op, cone, basis);
  const StepPlan plan = PlanStep(op, cfg);
  SolveReport report =
      IterateXZ(op, cone, StartZ(cone, cfg), cfg, plan,
                [&](const Vector& v) { return basis.ProjectSpan(v); });
  report.certificate =
      Certify(op, cone, basis, report.x, *report.z, plan.alpha, cfg.cert_tol);
  return report;
}

OptimalityCertificate Certify(const OperatorInterface& op,
                              const SeparableCone& cone, const Basis& basis,
                              const Vector& x_bar, const Vector& z_bar,
                              double alpha, double cert_tol) {
  CheckShapes(op, cone, basis);
  CheckDimension(x_bar.size(), cone.dim(), "Certify x_bar");
  CheckDimension(z_bar.size(), cone.dim(), "Certify z_bar");
  if (!(alpha > 0.0)) throw std::invalid_argument("Certify: alpha must be > 0");

  const Vector f = op.Apply(x_bar);
  OptimalityCertificate cert;
  cert.epsilon = (z_bar - (x_bar - alpha * f)) / alpha;
  cert.null_space_violation =
      (basis.ortho().transpose() * cert.epsilon).norm();
  const Vector direction = z_bar - x_bar;
  cert.normal_cone_ok = Contains(cone, x_bar, cert_tol) &&
                        InNormalCone(cone, x_bar, direction, cert_tol);
  // x'(F(x) - epsilon) = -x'(z - x) / alpha; zero at an exact solution.
  cert.complementarity_gap = std::abs(x_bar.dot(direction)) / alpha;
  return cert;
}

BoundComparison BoundReport(const OperatorInterface& op,
                            const SeparableCone& cone, const Basis& basis,
                            const SolveConfig& cfg, double verdict_tol) {
  CheckShapes(op, cone, basis);
  const StepPlan plan = PlanStep(op, cfg);
  if (!(plan.gamma < 1.0)) {
    throw PreconditionError("BoundReport needs a contractive step (gamma < 1)");
  }
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  BoundComparison out;
  out.alpha = plan.alpha;
  out.gamma = plan.gamma;
  const double scale = 1.0 / (1.0 - plan.gamma);

  const SolveReport exact = SolveExact(op, cone, cfg);
  out.exact_converged = exact.converged;
  out.iterations_exact = exact.iterations;
  const Vector& x_star = exact.x;
  const Vector z_star = x_star - plan.alpha * op.Apply(x_star);

  out.representation_new = basis.RepresentationError(z_star);
  out.bound_new = out.representation_new * scale;

  try {
    const SolveReport hat = SolveBertsekas(op, cone, basis, cfg, x_star);
    out.iterations_bertsekas = hat.iterations;
    out.bound_bertsekas = *hat.apriori_bound;
    out.representation_bertsekas = out.bound_bertsekas / scale;
    out.err_bertsekas = (hat.x - x_star).norm();
    out.bertsekas_ok =
        hat.converged && out.err_bertsekas <= out.bound_bertsekas + verdict_tol;
  } catch (const IntersectionProjectionFailed& e) {
    out.bertsekas_error = e.what();
    out.representation_bertsekas = kNaN;
    out.bound_bertsekas = kNaN;
    out.err_bertsekas = kNaN;
  }

  const SolveReport bar = SolveGalerkin(op, cone, basis, cfg);
  out.iterations_galerkin = bar.iterations;
  out.err_new_x = (bar.x - x_star).norm();
  out.err_new_z = (*bar.z - z_star).norm();
  out.certificate = bar.certificate;
  if (!bar.converged) out.galerkin_error = "Galerkin iteration did not converge";
  out.new_x_ok = bar.converged && out.err_new_x <= out.bound_new + verdict_tol;
  out.new_z_ok = bar.converged && out.err_new_z <= out.bound_new + verdict_tol;
  return out;
}

}  // namespace galvi
