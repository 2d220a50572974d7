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

#include <stdexcept>

#include "gtest/gtest.h"
#include "test_util.h"

namespace galvi {
namespace {

TEST(GenerateInstanceTest, SmallTargetsMet) {
  const Instance inst = GenerateInstance(10, 3, 1.0, 4.0, 0);
  EXPECT_GE(testing::DenseMinSymmetricEigenvalue(inst.op.m()), 0.999999);
  const double norm = testing::DenseSpectralNorm(inst.op.m());
  EXPECT_GE(norm, 4.0 * 0.95);
  EXPECT_LE(norm, 4.0 * 1.05);
  EXPECT_EQ(inst.cone, SeparableCone::Orthant(10));
  EXPECT_EQ(inst.raw_basis.rows(), 10);
  EXPECT_EQ(inst.raw_basis.cols(), 3);
  EXPECT_EQ(inst.basis.rank(), 3);
  EXPECT_LE(inst.op.beta(), testing::DenseMinSymmetricEigenvalue(inst.op.m()) + 1e-9);
  EXPECT_GE(inst.op.lipschitz(), norm - 1e-9);
}

TEST(GenerateInstanceTest, Deterministic) {
  const Instance a = GenerateInstance(30, 4, 0.5, 3.0, 42);
  const Instance b = GenerateInstance(30, 4, 0.5, 3.0, 42);
  EXPECT_EQ(a.op.m(), b.op.m());
  EXPECT_EQ(a.op.q(), b.op.q());
  EXPECT_EQ(a.raw_basis, b.raw_basis);
  EXPECT_EQ(a.basis.ortho(), b.basis.ortho());
  const Instance c = GenerateInstance(30, 4, 0.5, 3.0, 43);
  EXPECT_NE(a.op.m(), c.op.m());
}

TEST(GenerateInstanceTest, FullBasis) {
  const Instance inst = GenerateInstance(12, 12, 1.0, 2.0, 5);
  EXPECT_EQ(inst.basis.rank(), 12);
}

TEST(GenerateInstanceTest, TargetsAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = GenerateInstance(40, 8, 1.0, 4.0, seed);
    EXPECT_GE(testing::DenseMinSymmetricEigenvalue(inst.op.m()),
              1.0 * (1 - 1e-6));
    const double norm = testing::DenseSpectralNorm(inst.op.m());
    EXPECT_NEAR(norm, 4.0, 0.2) << "seed " << seed;
  }
}

TEST(GenerateInstanceTest, InvalidTargets) {
  EXPECT_THROW(GenerateInstance(10, 3, 0.0, 4.0, 0), std::invalid_argument);
  EXPECT_THROW(GenerateInstance(10, 3, 4.0, 4.0, 0), std::invalid_argument);
  EXPECT_THROW(GenerateInstance(10, 0, 1.0, 4.0, 0), std::invalid_argument);
  EXPECT_THROW(GenerateInstance(0, 1, 1.0, 4.0, 0), std::invalid_argument);
}

}  // namespace
}  // namespace galvi
