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

#ifndef GALVI_TYPES_H_
#define GALVI_TYPES_H_

#include <stdexcept>
#include <string>

#include "Eigen/Core"

namespace galvi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Base class for every error the library raises on its own account.
// Dimension and range violations use std::invalid_argument directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition on the input values (not just the shapes) failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The symmetric part of the operator is not positive definite, so no step
// size makes the fixed-point map a contraction.
class NotStronglyMonotone : public Error {
 public:
  explicit NotStronglyMonotone(double beta)
      : Error("operator is not strongly monotone (beta = " +
              std::to_string(beta) + ")"),
        beta_(beta) {}
  double beta() const { return beta_; }

 private:
  double beta_;
};

class EmptyBasis : public Error {
 public:
  EmptyBasis() : Error("basis matrix has no nonzero column") {}
};

// Dykstra's iteration did not settle. Usually this means the cone and the
// subspace barely intersect.
class IntersectionProjectionFailed : public Error {
 public:
  using Error::Error;
};

class IpmBreakdown : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

// Throws std::invalid_argument unless `actual == expected`.
inline void CheckDimension(Eigen::Index actual, Eigen::Index expected,
                           const char* what) {
  if (actual != expected) {
    throw std::invalid_argument(std::string(what) + ": dimension " +
                                std::to_string(actual) + ", expected " +
                                std::to_string(expected));
  }
}

}  // namespace galvi

#endif  // GALVI_TYPES_H_
