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

#include "galvi/transforms.h"

#include <stdexcept>
#include <utility>

namespace galvi {
namespace {

// For m = 0 the equality-free product would need an empty segment, which
// SeparableCone does not allow.
SeparableCone WithFree(const SeparableCone& cone, Eigen::Index m) {
  if (m == 0) return cone;
  return cone.Append(SeparableCone::Free(m));
}

ConicProgramLayout MakeLayout(SeparableCone cone, Matrix m, Vector q,
                              std::vector<VariableSpan> spans) {
  AffineOperator op(std::move(m), std::move(q));
  const bool strong = op.beta() > 0.0;
  return {std::move(cone), std::move(op), std::move(spans), strong};
}

}  // namespace

bool ComplementarityProblem::IsSolution(const Vector& x, double tol) const {
  return IsComplementary(cone, x, op->Apply(x), tol);
}

ComplementarityProblem ViToCp(std::shared_ptr<const OperatorInterface> op,
                              SeparableCone cone) {
  if (!op) throw std::invalid_argument("ViToCp: null operator");
  CheckDimension(op->dim(), cone.dim(), "ViToCp");
  return {std::move(op), std::move(cone)};
}

const VariableSpan& ConicProgramLayout::Span(const std::string& name) const {
  for (const VariableSpan& span : variable_map) {
    if (span.name == name) return span;
  }
  throw std::out_of_range("no variable block named '" + name + "'");
}

Vector ConicProgramLayout::Extract(const Vector& full,
                                   const std::string& name) const {
  CheckDimension(full.size(), cone.dim(), "ConicProgramLayout::Extract");
  const VariableSpan& span = Span(name);
  return full.segment(span.offset, span.length);
}

ConicProgramLayout EliminateEqualities(const AffineOperator& op,
                                       const Matrix& a, const Vector& b,
                                       const SeparableCone& cone) {
  const Eigen::Index n = op.dim();
  const Eigen::Index m = a.rows();
  CheckDimension(cone.dim(), n, "EliminateEqualities cone");
  CheckDimension(b.size(), m, "EliminateEqualities b");
  if (m > 0) CheckDimension(a.cols(), n, "EliminateEqualities A");

  Matrix big = Matrix::Zero(n + m, n + m);
  big.topLeftCorner(n, n) = op.m();
  Vector offset(n + m);
  offset.head(n) = op.q();
  if (m > 0) {
    big.topRightCorner(n, m) = -a.transpose();
    big.bottomLeftCorner(m, n) = a;
    offset.tail(m) = -b;
  }
  std::vector<VariableSpan> spans{{"y", 0, n}};
  if (m > 0) spans.push_back({"lambda", n, m});
  return MakeLayout(WithFree(cone, m), std::move(big), std::move(offset),
                    std::move(spans));
}

void PolyhedralVI::Validate() const {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("PolyhedralVI: M must be square");
  }
  CheckDimension(q.size(), m.rows(), "PolyhedralVI q");
  CheckDimension(b.size(), a.rows(), "PolyhedralVI b");
  if (a.rows() > 0) CheckDimension(a.cols(), m.rows(), "PolyhedralVI A");
}

ConicProgramLayout PolyhedronToCone(const PolyhedralVI& problem) {
  problem.Validate();
  const Eigen::Index n = problem.m.rows();
  const Eigen::Index m = problem.a.rows();
  if (m == 0) {
    return MakeLayout(SeparableCone::Free(n), problem.m, problem.q,
                      {{"x", 0, n}});
  }
  const Eigen::Index dim = m + n + m;
  Matrix big = Matrix::Zero(dim, dim);
  // s-block: lambda.
  big.block(0, m + n, m, m).setIdentity();
  // x-block: Mx + q - A^T lambda.
  big.block(m, m, n, n) = problem.m;
  big.block(m, m + n, n, m) = -problem.a.transpose();
  // lambda-block: Ax - s + b.
  big.block(m + n, 0, m, m) = -Matrix::Identity(m, m);
  big.block(m + n, m, m, n) = problem.a;

  Vector offset = Vector::Zero(dim);
  offset.segment(m, n) = problem.q;
  offset.tail(m) = problem.b;

  SeparableCone cone({{SegmentKind::kNonNegative, m},
                      {SegmentKind::kFree, n},
                      {SegmentKind::kFree, m}});
  return MakeLayout(std::move(cone), std::move(big), std::move(offset),
                    {{"s", 0, m}, {"x", m, n}, {"lambda", m + n, m}});
}

}  // namespace galvi
