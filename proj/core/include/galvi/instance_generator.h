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

#ifndef GALVI_INSTANCE_GENERATOR_H_
#define GALVI_INSTANCE_GENERATOR_H_

#include <cstdint>

#include "galvi/affine_operator.h"
#include "galvi/basis.h"
#include "galvi/cone.h"
#include "galvi/types.h"

namespace galvi {

struct Instance {
  AffineOperator op;
  SeparableCone cone;
  Matrix raw_basis;
  Basis basis;
};

// Seeded random strongly monotone instance over the nonnegative orthant:
//
//   M = beta I + t (G^T G / ||G^T G|| + S / sqrt(2n)),
//
// with G a Gaussian min(n, 50) x n matrix, S = (H - H^T) / 2 for Gaussian H,
// and t tuned so ||M||_2 is within 5% of lipschitz. The symmetric part is
// beta I + (PSD), so beta(M) >= beta. q and Phi (n x k) are Gaussian.
//
// The same arguments give a bit-identical instance on the same build. Throws
// std::invalid_argument unless 0 < beta < lipschitz and 1 <= k, and
// GenerationError if the targets are missed after 100 attempts.
Instance GenerateInstance(Eigen::Index n, Eigen::Index k, double beta,
                          double lipschitz, std::uint64_t seed);

}  // namespace galvi

#endif  // GALVI_INSTANCE_GENERATOR_H_
