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

// Text formats.
//
// Problem file:
//   VI1 <n> <cone-spec>
//   <n rows of n decimals: M>
//   <one row of n decimals: q>
//
// Basis file:
//   BASIS1 <n> <k>
//   <n rows of k decimals: Phi>
//
// '#' starts a comment that runs to the end of the line; blank lines are
// ignored. Numbers are written with 17 significant digits, which round-trips
// every double.

#ifndef GALVI_PROBLEM_IO_H_
#define GALVI_PROBLEM_IO_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "galvi/affine_operator.h"
#include "galvi/cone.h"
#include "galvi/types.h"

namespace galvi {

struct ProblemData {
  Matrix m;
  Vector q;
  SeparableCone cone;

  // Estimates beta and L; see AffineOperator.
  AffineOperator Operator() const { return AffineOperator(m, q); }
};

// Throws ParseError carrying the 1-based line number.
ProblemData ParseProblem(std::string_view text);
std::string WriteProblem(const Matrix& m, const Vector& q,
                         const SeparableCone& cone);

Matrix ParseBasis(std::string_view text);
std::string WriteBasis(const Matrix& phi);

// Convenience wrappers. Throw std::runtime_error on I/O failure.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

// Shortest text that parses back to the same double (17 significant digits).
std::string FormatDouble(double value);

}  // namespace galvi

#endif  // GALVI_PROBLEM_IO_H_
