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

#include <map>
#include <memory>
#include <random>
#include <utility>

#include "benchmark/benchmark.h"
#include "galvi/affine_operator.h"
#include "galvi/basis.h"
#include "galvi/instance_generator.h"
#include "galvi/iterative_solvers.h"
#include "galvi/projective_lcp.h"

namespace galvi {
namespace {

// Generating an n = 4000 instance takes seconds, so instances are cached per
// (n, k).
const Instance& CachedInstance(Eigen::Index n, Eigen::Index k) {
  static std::map<std::pair<Eigen::Index, Eigen::Index>, std::unique_ptr<Instance>>
      cache;
  auto& slot = cache[{n, k}];
  if (!slot) slot = std::make_unique<Instance>(GenerateInstance(n, k, 1.0, 4.0, 1));
  return *slot;
}

void BM_IpmSolve(benchmark::State& state) {
  const Instance& inst = CachedInstance(state.range(0), state.range(1));
  const ProjectiveLcp p = ProjectiveLcp::Build(
      inst.op, inst.basis, ComputeContractionParams(inst.op).alpha);
  std::int64_t iterations = 0;
  for (auto _ : state) {
    const SolveReport r = SolveIpm(p, inst.cone);
    iterations += r.iterations;
    benchmark::DoNotOptimize(r.x.data());
  }
  state.counters["ipm_iters"] = benchmark::Counter(
      static_cast<double>(iterations), benchmark::Counter::kAvgIterations);
  state.counters["sec_per_ipm_iter"] = benchmark::Counter(
      static_cast<double>(iterations),
      benchmark::Counter::kIsRate | benchmark::Counter::kInvert);
}
BENCHMARK(BM_IpmSolve)
    ->ArgsProduct({{250, 1000, 4000}, {10}})
    ->Unit(benchmark::kMillisecond);

void BM_Woodbury(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  const Eigen::Index k = state.range(1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.5, 2.0);
  Vector d(n), rhs(n);
  Matrix q(n, k), w(k, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i) = unif(rng);
    rhs(i) = unif(rng);
    for (Eigen::Index j = 0; j < k; ++j) {
      q(i, j) = unif(rng) / static_cast<double>(n);
      w(j, i) = unif(rng);
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveDiagPlusLowRank(d, q, w, rhs).data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Woodbury)
    ->ArgsProduct({{1000, 4000, 16000}, {10}})
    ->Complexity(benchmark::oN);

void BM_BuildProjective(benchmark::State& state) {
  const Instance& inst = CachedInstance(state.range(0), 10);
  for (auto _ : state) {
    const ProjectiveLcp p = ProjectiveLcp::Build(inst.op, inst.basis, 0.0625);
    benchmark::DoNotOptimize(p.w().data());
  }
}
BENCHMARK(BM_BuildProjective)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GalerkinSolve(benchmark::State& state) {
  const Instance& inst = CachedInstance(state.range(0), state.range(1));
  for (auto _ : state) {
    const SolveReport r = SolveGalerkin(inst.op, inst.cone, inst.basis);
    benchmark::DoNotOptimize(r.x.data());
  }
}
BENCHMARK(BM_GalerkinSolve)->Args({250, 10})->Args({1000, 10})->Unit(benchmark::kMillisecond);

void BM_ExactSolve(benchmark::State& state) {
  const Instance& inst = CachedInstance(state.range(0), 10);
  for (auto _ : state) {
    const SolveReport r = SolveExact(inst.op, inst.cone);
    benchmark::DoNotOptimize(r.x.data());
  }
}
BENCHMARK(BM_ExactSolve)->Arg(250)->Unit(benchmark::kMillisecond);

void BM_ProjectIntersection(benchmark::State& state) {
  const Instance& inst = CachedInstance(state.range(0), 8);
  Matrix raw = inst.raw_basis;
  raw.col(0) = raw.col(0).cwiseAbs();
  const Basis basis = Basis::Orthonormalize(raw);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  Vector z(inst.op.dim());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ProjectIntersection(inst.cone, basis, z).data());
  }
}
BENCHMARK(BM_ProjectIntersection)->Arg(250)->Arg(1000);

void BM_LipschitzEstimate(benchmark::State& state) {
  const Instance& inst = CachedInstance(state.range(0), 10);
  for (auto _ : state) benchmark::DoNotOptimize(LipschitzConstant(inst.op.m()));
}
BENCHMARK(BM_LipschitzEstimate)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace galvi

BENCHMARK_MAIN();
