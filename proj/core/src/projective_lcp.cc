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

#include "galvi/projective_lcp.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "Eigen/Eigenvalues"
#include "Eigen/LU"

namespace galvi {

void IpmConfig::Validate() const {
  if (!(mu_tol > 0.0) || !(feas_tol > 0.0)) {
    throw std::invalid_argument("IpmConfig: tolerances must be positive");
  }
  if (max_iter < 1) throw std::invalid_argument("IpmConfig: max_iter < 1");
  if (!(step_fraction > 0.0 && step_fraction < 1.0)) {
    throw std::invalid_argument("IpmConfig: step_fraction must be in (0, 1)");
  }
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw std::invalid_argument("IpmConfig: sigma must be in (0, 1)");
  }
}

ProjectiveLcp ProjectiveLcp::Build(const AffineOperator& op,
                                   const Basis& basis, double alpha) {
  CheckDimension(basis.dim(), op.dim(), "ProjectiveLcp basis");
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("ProjectiveLcp: alpha must be positive");
  }
  const Matrix& q = basis.ortho();
  Matrix w = alpha * (q.transpose() * op.m()) - q.transpose();
  Vector r = alpha * (q * (q.transpose() * op.q()));
  return ProjectiveLcp(q, std::move(w), std::move(r), alpha);
}

Vector ProjectiveLcp::ApplyN(const Vector& x) const {
  CheckDimension(x.size(), n(), "ApplyN");
  return x + q_ * (w_ * x);
}

Matrix ProjectiveLcp::Materialize() const {
  Matrix dense = q_ * w_;
  dense.diagonal().array() += 1.0;
  return dense;
}

double VerifyPd(const ProjectiveLcp& plcp) {
  if (plcp.n() > 2000) {
    throw std::invalid_argument("VerifyPd: n > 2000 is too large to densify");
  }
  const Matrix dense = plcp.Materialize();
  const Matrix sym = 0.5 * (dense + dense.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

Vector SolveDiagPlusLowRank(const Vector& d, const Matrix& q, const Matrix& w,
                            const Vector& rhs) {
  const Eigen::Index n = d.size();
  CheckDimension(rhs.size(), n, "SolveDiagPlusLowRank rhs");
  CheckDimension(q.rows(), n, "SolveDiagPlusLowRank Q rows");
  CheckDimension(w.cols(), n, "SolveDiagPlusLowRank W cols");
  CheckDimension(w.rows(), q.cols(), "SolveDiagPlusLowRank W rows");
  if (!d.allFinite() || !(d.minCoeff() > 0.0)) {
    throw IpmBreakdown("diagonal of the Newton system is not positive");
  }
  const Vector inv_d = d.cwiseInverse();
  Vector u = inv_d.cwiseProduct(rhs);
  if (q.cols() == 0) return u;

  const Matrix dq = inv_d.asDiagonal() * q;  // n x k
  Matrix capacitance = w * dq;               // k x k, O(n k^2)
  capacitance.diagonal().array() += 1.0;
  const Eigen::PartialPivLU<Matrix> lu(capacitance);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    throw IpmBreakdown("capacitance matrix is singular (rcond " +
                       std::to_string(rcond) + ")");
  }
  const Vector y = lu.solve(w * u);
  u -= dq * y;
  return u;
}

namespace {

// Sets x_i = 0 where x_i < s_i on R+ coordinates and solves (N x + r)_B = 0
// on the rest. N_BB = I + Q_B W_B keeps the diagonal-plus-low-rank form.
// Returns the point and its statistics if it is feasible within feas_tol and
// no worse than the path-following answer.
std::optional<std::pair<Vector, IpmStats>> Polish(const ProjectiveLcp& plcp,
                                                  const Vector& mask,
                                                  const Vector& x,
                                                  const Vector& s,
                                                  const IpmConfig& cfg) {
  const Eigen::Index n = plcp.n();
  std::vector<Eigen::Index> basic;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (mask(i) == 0.0 || x(i) >= s(i)) basic.push_back(i);
  }
  const Eigen::Index b = static_cast<Eigen::Index>(basic.size());
  const Eigen::Index k = plcp.rank();
  Matrix q_b(b, k);
  Matrix w_b(k, b);
  Vector rhs(b);
  for (Eigen::Index j = 0; j < b; ++j) {
    q_b.row(j) = plcp.q_factor().row(basic[j]);
    w_b.col(j) = plcp.w().col(basic[j]);
    rhs(j) = -plcp.r()(basic[j]);
  }
  Vector x_b;
  try {
    x_b = SolveDiagPlusLowRank(Vector::Ones(b), q_b, w_b, rhs);
  } catch (const IpmBreakdown&) {
    return std::nullopt;
  }
  if (!x_b.allFinite()) return std::nullopt;

  Vector candidate = Vector::Zero(n);
  for (Eigen::Index j = 0; j < b; ++j) candidate(basic[j]) = x_b(j);
  const Vector w = plcp.ApplyN(candidate) + plcp.r();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (mask(i) == 0.0) {
      if (std::abs(w(i)) > cfg.feas_tol) return std::nullopt;
    } else if (candidate(i) < -cfg.feas_tol || w(i) < -cfg.feas_tol) {
      return std::nullopt;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (mask(i) != 0.0) candidate(i) = std::max(candidate(i), 0.0);
  }
  const Vector s_new = (plcp.ApplyN(candidate) + plcp.r()).cwiseProduct(mask);
  const Vector residual = s_new - (plcp.ApplyN(candidate) + plcp.r());
  const double pairs = mask.sum();
  IpmStats stats;
  stats.mu = pairs > 0 ? std::abs(candidate.cwiseProduct(s_new).sum()) / pairs
                       : 0.0;
  stats.feasibility_residual = residual.lpNorm<Eigen::Infinity>();
  stats.polished = true;
  if (stats.mu > cfg.mu_tol || stats.feasibility_residual > cfg.feas_tol) {
    return std::nullopt;
  }
  return std::make_pair(std::move(candidate), stats);
}

}  // namespace

SolveReport SolveIpm(const ProjectiveLcp& plcp, const SeparableCone& cone,
                     const IpmConfig& cfg) {
  cfg.Validate();
  CheckDimension(cone.dim(), plcp.n(), "SolveIpm cone");
  if (cone.CountOf(SegmentKind::kZero) > 0) {
    throw std::invalid_argument("SolveIpm: zero segments are not supported");
  }
  const auto start = std::chrono::steady_clock::now();
  const Eigen::Index n = plcp.n();

  // mask(i) = 1 on complementarity coordinates, 0 on free ones.
  Vector mask(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    mask(i) = cone.KindAt(i) == SegmentKind::kNonNegative ? 1.0 : 0.0;
  }
  const double num_pairs = mask.sum();

  Vector x = mask;  // ones on R+, zeros on R
  Vector s = (plcp.ApplyN(x) + plcp.r()).cwiseMax(1.0).cwiseProduct(mask);

  SolveReport report;
  report.alpha = plcp.alpha();
  report.gamma = std::numeric_limits<double>::quiet_NaN();
  report.guaranteed = false;
  IpmStats stats;

  // Ratio test on the coordinates selected by mask.
  auto max_step = [&](const Vector& v, const Vector& dv) {
    double step = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (mask(i) != 0.0 && dv(i) < 0.0) step = std::min(step, -v(i) / dv(i));
    }
    return step;
  };

  for (std::int64_t it = 0;; ++it) {
    // rd = s - (N x + r); s is zero on free coordinates.
    const Vector residual = s - (plcp.ApplyN(x) + plcp.r());
    const double mu = num_pairs > 0 ? x.cwiseProduct(s).sum() / num_pairs : 0.0;
    stats = {mu, residual.lpNorm<Eigen::Infinity>()};
    report.iterations = it;
    if (mu <= cfg.mu_tol && stats.feasibility_residual <= cfg.feas_tol) {
      report.converged = true;
      break;
    }
    if (it >= cfg.max_iter) break;

    // (X^{-1} S + N) dx = X^{-1}(sigma mu e - X S e) + rd on R+ rows,
    //            N dx = rd on free rows.
    Vector diag = Vector::Ones(n);
    Vector rhs = residual;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (mask(i) == 0.0) continue;
      diag(i) += s(i) / x(i);
      rhs(i) += (cfg.sigma * mu - x(i) * s(i)) / x(i);
    }
    const Vector dx = SolveDiagPlusLowRank(diag, plcp.q_factor(), plcp.w(), rhs);
    const Vector ds = (plcp.ApplyN(dx) - residual).cwiseProduct(mask);
    if (!dx.allFinite() || !ds.allFinite()) {
      throw IpmBreakdown("Newton direction is not finite");
    }

    const double boundary = std::min(max_step(x, dx), max_step(s, ds));
    const double step = std::min(1.0, cfg.step_fraction * boundary);
    x += step * dx;
    s += step * ds;
    report.final_step_norm = step * dx.norm();
  }

  if (report.converged && cfg.polish) {
    if (auto finished = Polish(plcp, mask, x, s, cfg)) {
      x = std::move(finished->first);
      stats = finished->second;
    }
  }
  report.x = std::move(x);
  report.ipm = stats;
  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

}  // namespace galvi
