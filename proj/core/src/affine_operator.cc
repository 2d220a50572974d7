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

#include "galvi/affine_operator.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "Eigen/Eigenvalues"

namespace galvi {
namespace {

constexpr Eigen::Index kDenseEigenLimit = 2000;
constexpr double kRelativeTolerance = 1e-12;
constexpr Eigen::Index kMaxKrylovDim = 200;
constexpr int kMaxRestarts = 50;
constexpr Eigen::Index kCheckEvery = 8;

struct EigenEstimate {
  double eigenvalue = 0.0;
  double residual = 0.0;
};

// Fixed pseudo-random start so that estimates are reproducible.
Vector StartVector(Eigen::Index n) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = unif(rng);
  return v.normalized();
}

// Largest eigenvalue of a symmetric operator given as a matvec: restarted
// Lanczos with full reorthogonalization, i.e. power iteration with the whole
// Krylov space kept. Returns the top Ritz value and its residual
// ||B y - theta y||, which is exact for the Ritz pair.
template <typename Apply>
EigenEstimate TopEigenvalue(Eigen::Index n, Apply&& apply) {
  const Eigen::Index max_dim = std::min(n, kMaxKrylovDim);
  Matrix basis(n, max_dim);
  Vector start = StartVector(n);
  EigenEstimate best;

  for (int restart = 0; restart <= kMaxRestarts; ++restart) {
    std::vector<double> diag;
    std::vector<double> offdiag;
    basis.col(0) = start;
    double scale = 0.0;
    for (Eigen::Index j = 0; j < max_dim; ++j) {
      Vector w = apply(Vector(basis.col(j)));
      // Rayleigh quotient with its own normalization keeps exact cases
      // exact (w = c v gives alpha = c).
      const double alpha = basis.col(j).dot(w) / basis.col(j).squaredNorm();
      diag.push_back(alpha);
      scale = std::max(scale, std::abs(alpha));
      w -= alpha * basis.col(j);
      if (j > 0) w -= offdiag.back() * basis.col(j - 1);
      // Two passes of classical Gram-Schmidt against the whole basis.
      for (int pass = 0; pass < 2; ++pass) {
        const auto used = basis.leftCols(j + 1);
        w -= used * (used.transpose() * w);
      }
      const double beta = w.norm();
      const bool exhausted = beta <= 1e-14 * std::max(scale, 1e-300) ||
                             j + 1 == max_dim;
      if (!exhausted) offdiag.push_back(beta);

      if (exhausted || (j + 1) % kCheckEvery == 0) {
        const Eigen::Index m = static_cast<Eigen::Index>(diag.size());
        Vector d = Eigen::Map<const Vector>(diag.data(), m);
        Vector e = Vector::Zero(std::max<Eigen::Index>(m - 1, 0));
        for (Eigen::Index i = 0; i + 1 < m; ++i) e(i) = offdiag[i];
        Eigen::SelfAdjointEigenSolver<Matrix> tri;
        tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
        const double theta = tri.eigenvalues()(m - 1);
        const Vector s = tri.eigenvectors().col(m - 1);
        // Residual of the Ritz pair: |beta_m * s_m| for the Lanczos
        // recurrence; 0 when the Krylov space became invariant.
        const double next_beta = exhausted ? beta : offdiag.back();
        const double residual = std::abs(next_beta * s(m - 1));
        best = {theta, residual};
        if (residual <= kRelativeTolerance * std::abs(theta) ||
            beta <= 1e-14 * std::max(scale, 1e-300)) {
          return best;
        }
        if (exhausted) {
          start = (basis.leftCols(m) * s).normalized();
          break;
        }
      }
      basis.col(j + 1) = w / beta;
    }
  }
  return best;
}

}  // namespace

AffineOperator::AffineOperator(Matrix m, Vector q)
    : m_(std::move(m)), q_(std::move(q)) {
  Validate();
  beta_ = MonotoneModulus(m_);
  lipschitz_ = LipschitzConstant(m_);
}

AffineOperator::AffineOperator(Matrix m, Vector q, double beta,
                               double lipschitz)
    : m_(std::move(m)), q_(std::move(q)), beta_(beta), lipschitz_(lipschitz) {
  Validate();
  if (!(lipschitz_ >= 0.0) || !(beta_ <= lipschitz_)) {
    throw std::invalid_argument("declared constants need beta <= L, L >= 0");
  }
}

void AffineOperator::Validate() const {
  if (m_.rows() != m_.cols()) {
    throw std::invalid_argument("AffineOperator: M must be square");
  }
  CheckDimension(q_.size(), m_.rows(), "AffineOperator q");
  if (m_.rows() == 0) throw std::invalid_argument("AffineOperator: empty M");
  if (!m_.allFinite() || !q_.allFinite()) {
    throw std::invalid_argument("AffineOperator: non-finite entry");
  }
}

Vector AffineOperator::Apply(const Vector& x) const {
  CheckDimension(x.size(), dim(), "AffineOperator::Apply");
  return m_ * x + q_;
}

double MonotoneModulus(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("MonotoneModulus: M must be square");
  }
  const Matrix sym = 0.5 * (m + m.transpose());
  const Eigen::Index n = sym.rows();
  if (n <= kDenseEigenLimit) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    return eig.eigenvalues()(0);
  }
  // lambda_min(S) = -lambda_max(-S), rounded down by the residual.
  const EigenEstimate top =
      TopEigenvalue(n, [&](const Vector& v) -> Vector { return -(sym * v); });
  return -(top.eigenvalue + top.residual);
}

double LipschitzConstant(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("LipschitzConstant: M must be square");
  }
  const Matrix mt = m.transpose();
  const EigenEstimate top = TopEigenvalue(
      m.cols(), [&](const Vector& v) -> Vector { return mt * (m * v); });
  return std::sqrt(std::max(0.0, top.eigenvalue + top.residual));
}

ContractionParams ComputeContractionParams(const Matrix& m) {
  const double beta = MonotoneModulus(m);
  if (!(beta > 0.0)) throw NotStronglyMonotone(beta);
  const double lipschitz = std::max(LipschitzConstant(m), beta);
  const double ratio = beta / lipschitz;
  return {beta, lipschitz, beta / (lipschitz * lipschitz),
          std::sqrt(std::max(0.0, 1.0 - ratio * ratio))};
}

ContractionParams ComputeContractionParams(const OperatorInterface& op) {
  const double beta = op.beta();
  if (!(beta > 0.0)) throw NotStronglyMonotone(beta);
  const double lipschitz = std::max(op.lipschitz(), beta);
  const double ratio = beta / lipschitz;
  return {beta, lipschitz, beta / (lipschitz * lipschitz),
          std::sqrt(std::max(0.0, 1.0 - ratio * ratio))};
}

double ContractionFactor(double beta, double lipschitz, double alpha) {
  const double sq =
      1.0 - 2.0 * alpha * beta + alpha * alpha * lipschitz * lipschitz;
  return std::sqrt(std::max(0.0, sq));
}

std::int64_t IterationBound(double gamma, double eps) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("IterationBound: gamma must be in (0, 1)");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("IterationBound: eps must be in (0, 1)");
  }
  const double ratio = std::log(eps) / std::log(gamma);
  // Absorb rounding in exact cases such as gamma = 0.5, eps = 0.25.
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-12 * std::max(1.0, nearest)) {
    return static_cast<std::int64_t>(nearest);
  }
  return static_cast<std::int64_t>(std::ceil(ratio));
}

}  // namespace galvi
