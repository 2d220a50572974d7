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

// Separable cones: products of one-dimensional cones. A segment is a run of
// coordinates that are all nonnegative (R+), all free (R), or all pinned to
// zero ({0}, which only shows up as the dual of a free segment).
//
// Every operation here is componentwise, so projection costs O(n).

#ifndef GALVI_CONE_H_
#define GALVI_CONE_H_

#include <string>
#include <string_view>
#include <vector>

#include "galvi/types.h"

namespace galvi {

enum class SegmentKind { kNonNegative, kFree, kZero };

struct Segment {
  SegmentKind kind;
  Eigen::Index length;

  friend bool operator==(const Segment&, const Segment&) = default;
};

class SeparableCone {
 public:
  // Adjacent segments of the same kind are merged. Throws
  // std::invalid_argument on an empty list or a segment of length < 1.
  explicit SeparableCone(std::vector<Segment> segments);

  static SeparableCone Orthant(Eigen::Index n);
  static SeparableCone Free(Eigen::Index n);

  // Parses the text form used by files and the CLI, e.g. "nn:5,free:2,nn:3".
  // Accepted kinds: nn, free, zero.
  static SeparableCone Parse(std::string_view text);
  std::string ToString() const;

  Eigen::Index dim() const { return dim_; }
  const std::vector<Segment>& segments() const { return segments_; }
  SegmentKind KindAt(Eigen::Index i) const;

  // Number of coordinates of each kind.
  Eigen::Index CountOf(SegmentKind kind) const;

  // Product with another cone (this cone's coordinates first).
  SeparableCone Append(const SeparableCone& other) const;

  friend bool operator==(const SeparableCone&, const SeparableCone&) = default;

 private:
  std::vector<Segment> segments_;
  Eigen::Index dim_ = 0;
};

// Euclidean projection: nonnegative coordinates are clipped at 0, free ones
// pass through, zero ones become 0.
Vector Project(const SeparableCone& cone, const Vector& x);

// K* of a separable cone: R+ is self-dual, R maps to {0}, {0} maps to R.
SeparableCone Dual(const SeparableCone& cone);

// Membership with tolerance tol * (1 + ||x||_inf) per coordinate.
bool Contains(const SeparableCone& cone, const Vector& x, double tol);

// x in K, y in K*, |x'y| <= tol * (1 + ||x|| ||y||), all within tol.
bool IsComplementary(const SeparableCone& cone, const Vector& x,
                     const Vector& y, double tol);

// Whether d lies in the normal cone of `cone` at x, tested through the
// projection characterization ||P(x + d) - x|| <= tol * (1 + ||d||).
// Throws PreconditionError if x is not in the cone within tol.
bool InNormalCone(const SeparableCone& cone, const Vector& x, const Vector& d,
                  double tol);

}  // namespace galvi

#endif  // GALVI_CONE_H_
