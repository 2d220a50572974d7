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

#include "galvi/cone.h"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace galvi {
namespace {

std::string_view KindName(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::kNonNegative:
      return "nn";
    case SegmentKind::kFree:
      return "free";
    case SegmentKind::kZero:
      return "zero";
  }
  return "?";
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

Segment ParseSegment(std::string_view token) {
  token = Trim(token);
  const auto colon = token.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("cone segment '" + std::string(token) +
                                "' is missing ':'");
  }
  const std::string_view name = Trim(token.substr(0, colon));
  const std::string_view count = Trim(token.substr(colon + 1));

  Segment segment{};
  if (name == "nn") {
    segment.kind = SegmentKind::kNonNegative;
  } else if (name == "free") {
    segment.kind = SegmentKind::kFree;
  } else if (name == "zero") {
    segment.kind = SegmentKind::kZero;
  } else {
    throw std::invalid_argument("unknown cone segment kind '" +
                                std::string(name) + "'");
  }
  long long length = 0;
  const auto [ptr, ec] =
      std::from_chars(count.data(), count.data() + count.size(), length);
  if (ec != std::errc() || ptr != count.data() + count.size()) {
    throw std::invalid_argument("bad cone segment length '" +
                                std::string(count) + "'");
  }
  segment.length = static_cast<Eigen::Index>(length);
  return segment;
}

}  // namespace

SeparableCone::SeparableCone(std::vector<Segment> segments) {
  if (segments.empty()) {
    throw std::invalid_argument("cone needs at least one segment");
  }
  for (const Segment& s : segments) {
    if (s.length < 1) {
      throw std::invalid_argument("cone segment length must be >= 1");
    }
    if (!segments_.empty() && segments_.back().kind == s.kind) {
      segments_.back().length += s.length;
    } else {
      segments_.push_back(s);
    }
    dim_ += s.length;
  }
}

SeparableCone SeparableCone::Orthant(Eigen::Index n) {
  return SeparableCone({{SegmentKind::kNonNegative, n}});
}

SeparableCone SeparableCone::Free(Eigen::Index n) {
  return SeparableCone({{SegmentKind::kFree, n}});
}

SeparableCone SeparableCone::Parse(std::string_view text) {
  std::vector<Segment> segments;
  while (true) {
    const auto comma = text.find(',');
    segments.push_back(ParseSegment(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return SeparableCone(std::move(segments));
}

std::string SeparableCone::ToString() const {
  std::string out;
  for (const Segment& s : segments_) {
    if (!out.empty()) out += ',';
    out += KindName(s.kind);
    out += ':';
    out += std::to_string(s.length);
  }
  return out;
}

SegmentKind SeparableCone::KindAt(Eigen::Index i) const {
  if (i < 0 || i >= dim_) throw std::out_of_range("cone coordinate");
  for (const Segment& s : segments_) {
    if (i < s.length) return s.kind;
    i -= s.length;
  }
  return segments_.back().kind;
}

Eigen::Index SeparableCone::CountOf(SegmentKind kind) const {
  Eigen::Index count = 0;
  for (const Segment& s : segments_) {
    if (s.kind == kind) count += s.length;
  }
  return count;
}

SeparableCone SeparableCone::Append(const SeparableCone& other) const {
  std::vector<Segment> segments = segments_;
  segments.insert(segments.end(), other.segments_.begin(),
                  other.segments_.end());
  return SeparableCone(std::move(segments));
}

Vector Project(const SeparableCone& cone, const Vector& x) {
  CheckDimension(x.size(), cone.dim(), "Project");
  Vector out = x;
  Eigen::Index offset = 0;
  for (const Segment& s : cone.segments()) {
    auto block = out.segment(offset, s.length);
    switch (s.kind) {
      case SegmentKind::kNonNegative:
        block = block.cwiseMax(0.0);
        break;
      case SegmentKind::kFree:
        break;
      case SegmentKind::kZero:
        block.setZero();
        break;
    }
    offset += s.length;
  }
  return out;
}

SeparableCone Dual(const SeparableCone& cone) {
  std::vector<Segment> segments;
  segments.reserve(cone.segments().size());
  for (const Segment& s : cone.segments()) {
    SegmentKind kind = s.kind;
    if (kind == SegmentKind::kFree) {
      kind = SegmentKind::kZero;
    } else if (kind == SegmentKind::kZero) {
      kind = SegmentKind::kFree;
    }
    segments.push_back({kind, s.length});
  }
  return SeparableCone(std::move(segments));
}

bool Contains(const SeparableCone& cone, const Vector& x, double tol) {
  CheckDimension(x.size(), cone.dim(), "Contains");
  const double slack = tol * (1.0 + x.lpNorm<Eigen::Infinity>());
  Eigen::Index offset = 0;
  for (const Segment& s : cone.segments()) {
    const auto block = x.segment(offset, s.length);
    switch (s.kind) {
      case SegmentKind::kNonNegative:
        if (block.size() > 0 && block.minCoeff() < -slack) return false;
        break;
      case SegmentKind::kFree:
        break;
      case SegmentKind::kZero:
        if (block.size() > 0 && block.cwiseAbs().maxCoeff() > slack) {
          return false;
        }
        break;
    }
    offset += s.length;
  }
  return true;
}

bool IsComplementary(const SeparableCone& cone, const Vector& x,
                     const Vector& y, double tol) {
  CheckDimension(x.size(), cone.dim(), "IsComplementary(x)");
  CheckDimension(y.size(), cone.dim(), "IsComplementary(y)");
  if (!Contains(cone, x, tol) || !Contains(Dual(cone), y, tol)) return false;
  return std::abs(x.dot(y)) <= tol * (1.0 + x.norm() * y.norm());
}

bool InNormalCone(const SeparableCone& cone, const Vector& x, const Vector& d,
                  double tol) {
  CheckDimension(d.size(), cone.dim(), "InNormalCone(d)");
  if (!Contains(cone, x, tol)) {
    throw PreconditionError("InNormalCone: x is not in the cone");
  }
  return (Project(cone, x + d) - x).norm() <= tol * (1.0 + d.norm());
}

}  // namespace galvi
