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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "galvi/affine_operator.h"
#include "galvi/basis.h"
#include "galvi/cone.h"
#include "galvi/instance_generator.h"
#include "galvi/iterative_solvers.h"
#include "galvi/projective_lcp.h"
#include "galvi/transforms.h"

namespace galvi {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages of a criterion.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  void Note(const std::string& text) { notes_ += (notes_.empty() ? "" : ", ") + text; }

  Outcome Finish() const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (!notes_.empty()) os << ", " << notes_;
    if (failures_ > 0) os << "; " << failures_ << " failed: " << messages_;
    return {failures_ == 0 && checks_ > 0, os.str()};
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::string messages_;
  std::string notes_;
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Vector Gaussian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

Matrix GaussianMatrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Outcome ContractionLaw() {
  const auto start = Clock::now();
  Checker c;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = GenerateInstance(50, 1, 1.0, 4.0, seed);
    const ContractionParams p = ComputeContractionParams(inst.op);
    const Matrix t = Matrix::Identity(50, 50) - p.alpha * inst.op.m();
    std::mt19937_64 rng(seed);
    for (int pair = 0; pair < 100; ++pair) {
      const Vector d = Gaussian(50, rng) - Gaussian(50, rng);
      const double lhs = (t * d).norm();
      c.Expect(lhs <= p.gamma * d.norm() + 1e-12,
               "seed " + std::to_string(seed) + ": " + Num(lhs) + " > " +
                   Num(p.gamma * d.norm()));
    }
  }
  const double secs = Seconds(start);
  c.Expect(secs < 5.0, "runtime " + Num(secs) + " s");
  c.Note(Num(secs) + " s");
  return c.Finish();
}

Outcome ConvergenceRateLaw() {
  Checker c;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = GenerateInstance(50, 1, 1.0, 4.0, 100 + seed);
    SolveConfig cfg;
    cfg.tol = 1e-13;
    cfg.record_iterates = true;
    const SolveReport r = SolveExact(inst.op, inst.cone, cfg);
    const std::string tag = "seed " + std::to_string(100 + seed);
    c.Expect(r.converged, tag + " not converged");
    for (std::size_t t = 0; t + 1 < r.trace.size(); ++t) {
      const double next = r.trace[t + 1].distance_to_final;
      const double bound = r.gamma * r.trace[t].distance_to_final + 1e-10;
      c.Expect(next <= bound, tag + " t=" + std::to_string(t));
    }
    const double d0 = r.trace.front().distance_to_final;
    std::int64_t needed = 0;
    while (r.trace[needed].distance_to_final > 1e-8 * d0) ++needed;
    c.Expect(needed <= IterationBound(r.gamma, 1e-8),
             tag + ": " + std::to_string(needed) + " iterations > bound");
  }
  return c.Finish();
}

// Basis whose first column is nonnegative, so C cap span(Phi) is more than
// the origin.
Basis RayBasis(const Instance& inst) {
  Matrix raw = inst.raw_basis;
  raw.col(0) = raw.col(0).cwiseAbs();
  return Basis::Orthonormalize(raw);
}

struct BoundSweep {
  std::vector<BoundComparison> results;
  std::vector<std::string> tags;
  double seconds = 0.0;
};

const BoundSweep& RunBoundSweep() {
  static const BoundSweep sweep = [] {
    BoundSweep s;
    const auto start = Clock::now();
    const Eigen::Index ks[] = {4, 8, 16};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Eigen::Index k = ks[seed % 3];
      const Instance inst = GenerateInstance(40, k, 1.0, 4.0, seed);
      s.results.push_back(BoundReport(inst.op, inst.cone, RayBasis(inst)));
      s.tags.push_back("seed " + std::to_string(seed) + " k=" + std::to_string(k));
    }
    s.seconds = Seconds(start);
    return s;
  }();
  return sweep;
}

Outcome BertsekasBound() {
  const BoundSweep& s = RunBoundSweep();
  Checker c;
  int nontrivial = 0;
  for (std::size_t i = 0; i < s.results.size(); ++i) {
    const BoundComparison& b = s.results[i];
    c.Expect(!b.bertsekas_error.has_value(), s.tags[i] + ": " + b.bertsekas_error.value_or(""));
    c.Expect(b.err_bertsekas <= b.bound_bertsekas + 1e-8,
             s.tags[i] + ": " + Num(b.err_bertsekas) + " > " + Num(b.bound_bertsekas));
    if (b.err_bertsekas > 1e-6) ++nontrivial;
  }
  c.Expect(s.seconds < 60.0, "runtime " + Num(s.seconds) + " s");
  c.Note(Num(s.seconds) + " s");
  c.Note(std::to_string(nontrivial) + " with nonzero error");
  return c.Finish();
}

Outcome NewBound() {
  const BoundSweep& s = RunBoundSweep();
  Checker c;
  double worst = 0.0;
  for (std::size_t i = 0; i < s.results.size(); ++i) {
    const BoundComparison& b = s.results[i];
    c.Expect(!b.galerkin_error.has_value(), s.tags[i] + " not converged");
    c.Expect(b.err_new_z <= b.bound_new + 1e-8,
             s.tags[i] + " z: " + Num(b.err_new_z) + " > " + Num(b.bound_new));
    c.Expect(b.err_new_x <= b.bound_new + 1e-8,
             s.tags[i] + " x: " + Num(b.err_new_x) + " > " + Num(b.bound_new));
    if (b.bound_new > 0) worst = std::max(worst, b.err_new_z / b.bound_new);
  }
  c.Note("max err/bound " + Num(worst));
  return c.Finish();
}

void CheckCertificate(Checker& c, const SolveReport& r,
                      const SeparableCone& cone, const std::string& tag) {
  if (!r.converged) return;
  const OptimalityCertificate& cert = *r.certificate;
  c.Expect(cert.null_space_violation <= 1e-8 * (1.0 + cert.epsilon.norm()),
           tag + ": null space " + Num(cert.null_space_violation));
  c.Expect(InNormalCone(cone, r.x, *r.z - r.x, 1e-8), tag + ": normal cone");
}

Outcome Certificates() {
  Checker c;
  const Eigen::Index ks[] = {4, 8, 16};
  int converged = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = GenerateInstance(40, ks[seed % 3], 1.0, 4.0, seed);
    for (const Basis& basis : {inst.basis, RayBasis(inst)}) {
      const SolveReport r = SolveGalerkin(inst.op, inst.cone, basis);
      converged += r.converged;
      CheckCertificate(c, r, inst.cone, "seed " + std::to_string(seed));
    }
  }
  c.Note(std::to_string(converged) + " converged solves");
  return c.Finish();
}

struct ProjectiveSweep {
  std::vector<double> distance_ratio;
  std::vector<double> lambda_min;
  std::vector<bool> ipm_converged;
};

const ProjectiveSweep& RunProjectiveSweep() {
  static const ProjectiveSweep sweep = [] {
    ProjectiveSweep s;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const Instance inst = GenerateInstance(40, 8, 1.0, 4.0, 500 + seed);
      const SolveReport bar = SolveGalerkin(inst.op, inst.cone, inst.basis);
      const ProjectiveLcp p = ProjectiveLcp::Build(inst.op, inst.basis, bar.alpha);
      const SolveReport ipm = SolveIpm(p, inst.cone);
      s.ipm_converged.push_back(ipm.converged && bar.converged);
      s.distance_ratio.push_back((ipm.x - bar.x).norm() / (1.0 + bar.x.norm()));
      s.lambda_min.push_back(VerifyPd(p));
    }
    return s;
  }();
  return sweep;
}

Outcome ProjectiveEquivalence() {
  const ProjectiveSweep& s = RunProjectiveSweep();
  Checker c;
  double worst = 0.0;
  for (std::size_t i = 0; i < s.distance_ratio.size(); ++i) {
    const std::string tag = "instance " + std::to_string(i);
    c.Expect(s.ipm_converged[i], tag + " not converged");
    c.Expect(s.distance_ratio[i] <= 1e-6, tag + ": " + Num(s.distance_ratio[i]));
    worst = std::max(worst, s.distance_ratio[i]);
  }
  c.Note("max relative distance " + Num(worst));
  return c.Finish();
}

Outcome PositiveDefiniteN() {
  const ProjectiveSweep& s = RunProjectiveSweep();
  Checker c;
  double lowest = INFINITY;
  for (std::size_t i = 0; i < s.lambda_min.size(); ++i) {
    c.Expect(s.lambda_min[i] > 0.0, "instance " + std::to_string(i) + ": " +
                                        Num(s.lambda_min[i]));
    lowest = std::min(lowest, s.lambda_min[i]);
  }
  c.Note("min eigenvalue " + Num(lowest));
  return c.Finish();
}

Outcome IdentityCollapse() {
  Checker c;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = GenerateInstance(40, 1, 1.0, 4.0, 900 + seed);
    const Basis identity = Basis::Identity(40);
    SolveConfig cfg;
    cfg.tol = 1e-12;
    const SolveReport exact = SolveExact(inst.op, inst.cone, cfg);
    const SolveReport hat = SolveBertsekas(inst.op, inst.cone, identity, cfg);
    const SolveReport bar = SolveGalerkin(inst.op, inst.cone, identity, cfg);
    const double scale = std::max(exact.x.norm(), 1e-300);
    const std::string tag = "seed " + std::to_string(900 + seed);
    c.Expect(exact.converged && hat.converged && bar.converged, tag + " not converged");
    c.Expect((hat.x - exact.x).norm() <= 1e-8 * scale, tag + " bertsekas");
    c.Expect((bar.x - exact.x).norm() <= 1e-8 * scale, tag + " galerkin");
  }
  return c.Finish();
}

Outcome Woodbury() {
  Checker c;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.5, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Vector d(60);
    for (Eigen::Index i = 0; i < 60; ++i) d(i) = unif(rng);
    const Matrix q = Basis::Orthonormalize(GaussianMatrix(60, 6, rng)).ortho();
    const Matrix w = 0.2 * GaussianMatrix(6, 60, rng);
    const Vector rhs = Gaussian(60, rng);
    Matrix dense = q * w;
    dense.diagonal() += d;
    const Vector oracle = dense.partialPivLu().solve(rhs);
    const double rel =
        (SolveDiagPlusLowRank(d, q, w, rhs) - oracle).norm() / oracle.norm();
    c.Expect(rel <= 1e-10, "trial " + std::to_string(trial) + ": " + Num(rel));
    worst = std::max(worst, rel);
  }
  c.Note("max relative error " + Num(worst));
  return c.Finish();
}

double MedianIpmIterationSeconds(Eigen::Index n, int repeats) {
  const Instance inst = GenerateInstance(n, 10, 1.0, 4.0, 77);
  const ProjectiveLcp p = ProjectiveLcp::Build(
      inst.op, inst.basis, ComputeContractionParams(inst.op).alpha);
  std::vector<double> per_iter;
  for (int rep = 0; rep < repeats; ++rep) {
    const SolveReport r = SolveIpm(p, inst.cone);
    per_iter.push_back(r.seconds / static_cast<double>(std::max<std::int64_t>(r.iterations, 1)));
  }
  std::sort(per_iter.begin(), per_iter.end());
  return per_iter[per_iter.size() / 2];
}

Outcome CostStructure() {
  Checker c;
  const int repeats = 7;
  const double small = MedianIpmIterationSeconds(1000, repeats);
  const double large = MedianIpmIterationSeconds(4000, repeats);
  const double ratio = large / small;
  c.Expect(ratio <= 8.0, "ratio " + Num(ratio));
  c.Note("n=1000 " + Num(small) + " s/iter, n=4000 " + Num(large) + " s/iter, ratio " + Num(ratio));
  return c.Finish();
}

Outcome TransformRoundTrip() {
  Checker c;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = GenerateInstance(12, 1, 1.0, 4.0, 300 + seed);
    const Eigen::Index n = inst.op.dim();
    const PolyhedralVI problem{inst.op.m(), inst.op.q(), Matrix::Identity(n, n),
                               Vector::Zero(n)};
    const ConicProgramLayout layout = PolyhedronToCone(problem);
    const ProjectiveLcp p = ProjectiveLcp::Build(
        layout.op, Basis::Identity(layout.op.dim()), 1.0);
    const SolveReport ipm = SolveIpm(p, layout.cone);
    SolveConfig cfg;
    cfg.tol = 1e-12;
    const SolveReport direct = SolveExact(inst.op, inst.cone, cfg);
    const std::string tag = "seed " + std::to_string(300 + seed);
    c.Expect(ipm.converged && direct.converged, tag + " not converged");
    const double rel = (layout.Extract(ipm.x, "x") - direct.x).norm() /
                       std::max(direct.x.norm(), 1e-300);
    c.Expect(rel <= 1e-6, tag + ": " + Num(rel));
    worst = std::max(worst, rel);
  }
  c.Note("max relative difference " + Num(worst));
  return c.Finish();
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

int Main() {
  const std::vector<Criterion> criteria = {
      {"Contraction law", ContractionLaw},
      {"Convergence-rate law", ConvergenceRateLaw},
      {"Bertsekas error bound", BertsekasBound},
      {"New error bound", NewBound},
      {"Optimality certificate", Certificates},
      {"Projective reduction equivalence", ProjectiveEquivalence},
      {"Positive definite reduced matrix", PositiveDefiniteN},
      {"Identity-basis collapse", IdentityCollapse},
      {"Woodbury solver", Woodbury},
      {"Per-iteration IPM cost scaling", CostStructure},
      {"Transform round-trip", TransformRoundTrip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %zu. %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace galvi

int main() { return galvi::Main(); }
