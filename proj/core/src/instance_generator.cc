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

#include "galvi/instance_generator.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "Eigen/Eigenvalues"

namespace galvi {
namespace {

constexpr Eigen::Index kMaxGramRows = 50;
constexpr int kMaxAttempts = 100;
constexpr double kLipschitzBand = 0.05;
// Aim well inside the band so the final check has room.
constexpr double kLipschitzAim = 0.005;

Matrix Gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix out(rows, cols);
  // Fill column by column so the draw order is fixed.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = normal(rng);
  }
  return out;
}

}  // namespace

Instance GenerateInstance(Eigen::Index n, Eigen::Index k, double beta,
                          double lipschitz, std::uint64_t seed) {
  if (n < 1 || k < 1) {
    throw std::invalid_argument("GenerateInstance: n and k must be >= 1");
  }
  if (!(beta > 0.0 && beta < lipschitz)) {
    throw std::invalid_argument("GenerateInstance: need 0 < beta < L");
  }
  std::mt19937_64 rng(seed);
  const Matrix g = Gaussian(std::min(n, kMaxGramRows), n, rng);
  const Matrix h = Gaussian(n, n, rng);
  Vector q = Gaussian(n, 1, rng);
  Matrix raw_basis = Gaussian(n, k, rng);

  // ||G^T G|| = lambda_max(G G^T), the small Gram matrix.
  const Matrix small_gram = g * g.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(small_gram, Eigen::EigenvaluesOnly);
  const double gram_norm = eig.eigenvalues().maxCoeff();

  Matrix direction(n, n);
  direction.noalias() = g.transpose() * g;
  direction /= gram_norm;
  direction += (h - h.transpose()) / (2.0 * std::sqrt(2.0 * n));

  auto assemble = [&](double t) {
    Matrix m = t * direction;
    m.diagonal().array() += beta;
    return m;
  };

  // ||beta I + t A|| - beta grows roughly linearly in t; a secant-style
  // rescale converges in a handful of attempts.
  double t = lipschitz - beta;
  Matrix m = assemble(t);
  double estimate = LipschitzConstant(m);
  for (int attempt = 1;
       attempt < kMaxAttempts &&
       std::abs(estimate - lipschitz) > kLipschitzAim * lipschitz;
       ++attempt) {
    t *= (lipschitz - beta) / (estimate - beta);
    m = assemble(t);
    estimate = LipschitzConstant(m);
  }
  if (std::abs(estimate - lipschitz) > kLipschitzBand * lipschitz) {
    throw GenerationError("could not reach L = " + std::to_string(lipschitz) +
                          " (got " + std::to_string(estimate) + ")");
  }
  const double modulus = MonotoneModulus(m);
  if (modulus < beta * (1.0 - 1e-6)) {
    throw GenerationError("monotone modulus " + std::to_string(modulus) +
                          " is below the target " + std::to_string(beta));
  }

  Basis basis = Basis::Orthonormalize(raw_basis);
  AffineOperator op(std::move(m), std::move(q), modulus, estimate);
  return {std::move(op), SeparableCone::Orthant(n), std::move(raw_basis),
          std::move(basis)};
}

}  // namespace galvi
