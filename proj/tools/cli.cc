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

#include "cli.h"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "galvi/affine_operator.h"
#include "galvi/basis.h"
#include "galvi/cone.h"
#include "galvi/instance_generator.h"
#include "galvi/iterative_solvers.h"
#include "galvi/problem_io.h"
#include "galvi/projective_lcp.h"

namespace galvi::cli {
namespace {

// Raised for bad input data (as opposed to bad flags); maps to exit 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Printer {
 public:
  Printer(std::ostream& out, bool kv) : out_(out), kv_(kv) {}

  void Field(const std::string& key, const std::string& value) {
    if (kv_) {
      out_ << key << '\t' << value << '\n';
    } else {
      out_ << std::left << std::setw(18) << key << ' ' << value << '\n';
    }
  }
  void Field(const std::string& key, double value) {
    Field(key, FormatDouble(value));
  }
  void Field(const std::string& key, std::int64_t value) {
    Field(key, std::to_string(value));
  }
  void Flag(const std::string& key, bool value) {
    Field(key, std::string(value ? "true" : "false"));
  }
  void Field(const std::string& key, const Vector& v) {
    std::string text;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i > 0) text += ' ';
      text += FormatDouble(v(i));
    }
    Field(key, text);
  }
  // Human-only line; omitted in kv mode.
  void Note(const std::string& text) {
    if (!kv_) out_ << text << '\n';
  }

 private:
  std::ostream& out_;
  bool kv_;
};

struct LoadedProblem {
  ProblemData data;
  AffineOperator op;
};

LoadedProblem LoadProblem(const std::string& path) {
  std::string text;
  try {
    text = ReadTextFile(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  try {
    ProblemData data = ParseProblem(text);
    AffineOperator op = data.Operator();
    return {std::move(data), std::move(op)};
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Basis LoadBasis(const std::string& path, Eigen::Index n) {
  std::string text;
  try {
    text = ReadTextFile(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  Matrix raw;
  try {
    raw = ParseBasis(text);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
  if (raw.rows() != n) {
    throw InputError(path + ": basis has " + std::to_string(raw.rows()) +
                     " rows, problem has n = " + std::to_string(n));
  }
  try {
    return Basis::Orthonormalize(std::move(raw));
  } catch (const EmptyBasis& e) {
    throw InputError(path + ": " + e.what());
  }
}

void WriteTrace(const std::string& path, const SolveReport& report) {
  std::ostringstream text;
  for (const TraceEntry& entry : report.trace) {
    text << entry.t << '\t' << FormatDouble(entry.step_norm) << '\t'
         << FormatDouble(entry.distance_to_final) << '\n';
  }
  WriteTextFile(path, text.str());
}

// ||x - P_C(x - alpha F(x))||: zero exactly at a solution of the original VI.
double NaturalResidual(const OperatorInterface& op, const SeparableCone& cone,
                       const Vector& x, double alpha) {
  return (x - Project(cone, x - alpha * op.Apply(x))).norm();
}

void PrintCertificate(Printer& p, const OptimalityCertificate& cert) {
  p.Field("cert_nullspace", cert.null_space_violation);
  p.Flag("cert_normalcone", cert.normal_cone_ok);
  p.Field("cert_epsilon_norm", cert.epsilon.norm());
  p.Field("cert_gap", cert.complementarity_gap);
}

double Median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

struct SolveArgs {
  std::string method;
  std::string problem;
  std::string basis;
  std::string trace;
  double tol = 1e-10;
  std::int64_t max_iter = 0;
  double alpha = 0.0;
  double dykstra_tol = 1e-12;
  std::int64_t dykstra_max_iter = 10000;
  double mu_tol = 1e-10;
  double feas_tol = 1e-10;
  std::int64_t ipm_max_iter = 200;
};

SolveConfig MakeConfig(const SolveArgs& a) {
  SolveConfig cfg;
  cfg.tol = a.tol;
  if (a.max_iter > 0) cfg.max_iter = a.max_iter;
  if (a.alpha > 0.0) cfg.alpha_override = a.alpha;
  cfg.dykstra_tol = a.dykstra_tol;
  cfg.dykstra_max_iter = a.dykstra_max_iter;
  cfg.record_iterates = !a.trace.empty();
  return cfg;
}

int RunSolve(const SolveArgs& a, Printer& p) {
  const LoadedProblem problem = LoadProblem(a.problem);
  const AffineOperator& op = problem.op;
  const SeparableCone& cone = problem.data.cone;
  const Eigen::Index n = op.dim();
  const SolveConfig cfg = MakeConfig(a);

  std::optional<Basis> basis;
  if (!a.basis.empty()) basis = LoadBasis(a.basis, n);
  if (!basis && (a.method == "bertsekas" || a.method == "galerkin")) {
    throw CLI::ValidationError("--basis", "method " + a.method + " needs --basis");
  }

  SolveReport report;
  if (a.method == "exact") {
    report = SolveExact(op, cone, cfg);
  } else if (a.method == "bertsekas") {
    report = SolveBertsekas(op, cone, *basis, cfg);
  } else if (a.method == "galerkin") {
    report = SolveGalerkin(op, cone, *basis, cfg);
  } else {
    // Only monotonicity is needed here; fall back to alpha = 1 when the
    // contraction step is undefined.
    double alpha = a.alpha;
    if (!(alpha > 0.0)) {
      alpha = op.beta() > 0.0 ? ComputeContractionParams(op).alpha : 1.0;
    }
    const Basis span = basis ? *basis : Basis::Identity(n);
    const ProjectiveLcp plcp = ProjectiveLcp::Build(op, span, alpha);
    IpmConfig ipm;
    ipm.mu_tol = a.mu_tol;
    ipm.feas_tol = a.feas_tol;
    ipm.max_iter = a.ipm_max_iter;
    report = SolveIpm(plcp, cone, ipm);
  }

  p.Field("method", a.method);
  p.Flag("converged", report.converged);
  p.Field("iters", report.iterations);
  p.Field("alpha", report.alpha);
  p.Field("gamma", report.gamma);
  p.Field("step", report.final_step_norm);
  p.Field("residual", NaturalResidual(op, cone, report.x, report.alpha));
  if (report.ipm) {
    p.Field("mu", report.ipm->mu);
    p.Field("feasibility", report.ipm->feasibility_residual);
  }
  if (report.certificate) PrintCertificate(p, *report.certificate);
  p.Field("x", report.x);
  if (report.z) p.Field("z", *report.z);
  if (!a.trace.empty() && !report.trace.empty()) WriteTrace(a.trace, report);
  return report.converged ? kExitOk : kExitNotConverged;
}

int RunBounds(const SolveArgs& a, Printer& p) {
  const LoadedProblem problem = LoadProblem(a.problem);
  const Basis basis = LoadBasis(a.basis, problem.op.dim());
  const BoundComparison cmp =
      BoundReport(problem.op, problem.data.cone, basis, MakeConfig(a));
  auto verdict = [](bool ok) { return std::string(ok ? "OK" : "VIOLATED"); };

  p.Field("gamma", cmp.gamma);
  p.Field("alpha", cmp.alpha);
  p.Field("iters", cmp.iterations_galerkin);
  p.Field("iters_exact", cmp.iterations_exact);
  p.Field("iters_bertsekas", cmp.iterations_bertsekas);
  p.Field("bound_bertsekas", cmp.bound_bertsekas);
  p.Field("bound_new", cmp.bound_new);
  p.Field("err_bertsekas", cmp.err_bertsekas);
  p.Field("err_new", cmp.err_new_x);
  p.Field("err_new_z", cmp.err_new_z);
  if (cmp.certificate) {
    p.Field("cert_nullspace", cmp.certificate->null_space_violation);
    p.Flag("cert_normalcone", cmp.certificate->normal_cone_ok);
  }
  p.Field("verdict_bertsekas", cmp.bertsekas_error ? std::string("SKIPPED")
                                                   : verdict(cmp.bertsekas_ok));
  p.Field("verdict_new", verdict(cmp.new_x_ok && cmp.new_z_ok));
  if (cmp.bertsekas_error) p.Note("bertsekas: " + *cmp.bertsekas_error);
  if (cmp.galerkin_error) p.Note("galerkin: " + *cmp.galerkin_error);
  const bool converged = cmp.exact_converged && !cmp.galerkin_error;
  return converged ? kExitOk : kExitNotConverged;
}

int RunCertify(const SolveArgs& a, Printer& p) {
  const LoadedProblem problem = LoadProblem(a.problem);
  const Basis basis = LoadBasis(a.basis, problem.op.dim());
  const SolveReport report =
      SolveGalerkin(problem.op, problem.data.cone, basis, MakeConfig(a));
  p.Flag("converged", report.converged);
  p.Field("iters", report.iterations);
  p.Field("alpha", report.alpha);
  p.Field("gamma", report.gamma);
  PrintCertificate(p, *report.certificate);
  const double tol = 1e-8;
  p.Field("cert_valid", std::string(report.certificate->Valid(tol) ? "OK"
                                                                   : "VIOLATED"));
  return report.converged ? kExitOk : kExitNotConverged;
}

struct GenArgs {
  std::int64_t n = 0;
  std::int64_t k = 0;
  double beta = 1.0;
  double lipschitz = 4.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string basis_out;
};

int RunGen(const GenArgs& a, Printer& p) {
  const Instance inst = GenerateInstance(a.n, a.k, a.beta, a.lipschitz, a.seed);
  WriteTextFile(a.out, WriteProblem(inst.op.m(), inst.op.q(), inst.cone));
  if (!a.basis_out.empty()) WriteTextFile(a.basis_out, WriteBasis(inst.raw_basis));
  p.Field("n", static_cast<std::int64_t>(inst.op.dim()));
  p.Field("k", static_cast<std::int64_t>(inst.basis.rank()));
  p.Field("beta", inst.op.beta());
  p.Field("lipschitz", inst.op.lipschitz());
  p.Field("problem", a.out);
  if (!a.basis_out.empty()) p.Field("basis", a.basis_out);
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::int64_t> sizes{1000, 4000};
  std::int64_t k = 10;
  std::int64_t repeats = 5;
  std::uint64_t seed = 0;
  double beta = 1.0;
  double lipschitz = 4.0;
  std::int64_t threads = 1;
  bool skip_galerkin = false;
};

struct BenchRow {
  std::int64_t n = 0;
  std::int64_t ipm_iters = 0;
  double ipm_per_iter = 0.0;
  std::int64_t galerkin_iters = 0;
  double galerkin_per_iter = 0.0;
  bool converged = true;
};

BenchRow BenchOne(const BenchArgs& a, std::int64_t n) {
  const Instance inst = GenerateInstance(n, a.k, a.beta, a.lipschitz, a.seed);
  const ContractionParams params = ComputeContractionParams(inst.op);
  const ProjectiveLcp plcp = ProjectiveLcp::Build(inst.op, inst.basis, params.alpha);
  BenchRow row;
  row.n = n;
  std::vector<double> ipm_times;
  std::vector<double> galerkin_times;
  for (std::int64_t rep = 0; rep < a.repeats; ++rep) {
    const SolveReport ipm = SolveIpm(plcp, inst.cone);
    row.ipm_iters = ipm.iterations;
    row.converged = row.converged && ipm.converged;
    ipm_times.push_back(ipm.seconds / std::max<std::int64_t>(ipm.iterations, 1));
    if (!a.skip_galerkin) {
      const SolveReport gal = SolveGalerkin(inst.op, inst.cone, inst.basis);
      row.galerkin_iters = gal.iterations;
      row.converged = row.converged && gal.converged;
      galerkin_times.push_back(gal.seconds /
                               std::max<std::int64_t>(gal.iterations, 1));
    }
  }
  row.ipm_per_iter = Median(ipm_times);
  if (!galerkin_times.empty()) row.galerkin_per_iter = Median(galerkin_times);
  return row;
}

int RunBench(const BenchArgs& a, Printer& p) {
  std::vector<BenchRow> rows(a.sizes.size());
  std::vector<std::exception_ptr> errors(a.sizes.size());
  std::mutex next_mutex;
  std::size_t next = 0;
  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= a.sizes.size()) return;
        i = next++;
      }
      try {
        rows[i] = BenchOne(a, a.sizes[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = static_cast<std::size_t>(std::clamp<std::int64_t>(
      a.threads, 1, static_cast<std::int64_t>(a.sizes.size())));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  bool converged = true;
  p.Note("per-iteration medians over " + std::to_string(a.repeats) +
         " repeats, k = " + std::to_string(a.k));
  for (const BenchRow& row : rows) {
    const std::string suffix = "_" + std::to_string(row.n);
    p.Field("ipm_iters" + suffix, row.ipm_iters);
    p.Field("ipm_sec_per_iter" + suffix, row.ipm_per_iter);
    if (!a.skip_galerkin) {
      p.Field("galerkin_iters" + suffix, row.galerkin_iters);
      p.Field("galerkin_sec_per_iter" + suffix, row.galerkin_per_iter);
    }
    converged = converged && row.converged;
  }
  if (rows.size() >= 2 && rows.front().ipm_per_iter > 0.0) {
    p.Field("ipm_growth", rows.back().ipm_per_iter / rows.front().ipm_per_iter);
  }
  return converged ? kExitOk : kExitNotConverged;
}

void AddSolveOptions(CLI::App* cmd, SolveArgs& a, bool needs_basis) {
  cmd->add_option("--problem", a.problem, "Problem file (VI1 format)")
      ->required();
  auto* basis = cmd->add_option("--basis", a.basis, "Basis file (BASIS1 format)");
  if (needs_basis) basis->required();
  cmd->add_option("--tol", a.tol, "Fixed-point step tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", a.max_iter, "Iteration limit (0 = automatic)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--alpha", a.alpha, "Step size override (0 = beta/L^2)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--dykstra-tol", a.dykstra_tol)->check(CLI::PositiveNumber);
  cmd->add_option("--dykstra-max-iter", a.dykstra_max_iter)
      ->check(CLI::PositiveNumber);
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Galerkin solvers for monotone variational inequalities"};
  app.name(args.empty() ? "galvi" : args.front());
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "kv"}));

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve a problem file");
  solve->add_option("--method", solve_args.method, "Solver")
      ->required()
      ->check(CLI::IsMember({"exact", "bertsekas", "galerkin", "ipm"}));
  AddSolveOptions(solve, solve_args, false);
  solve->add_option("--trace", solve_args.trace,
                    "Write (t, step, distance to final) lines to this file");
  solve->add_option("--mu-tol", solve_args.mu_tol)->check(CLI::PositiveNumber);
  solve->add_option("--feas-tol", solve_args.feas_tol)->check(CLI::PositiveNumber);
  solve->add_option("--ipm-max-iter", solve_args.ipm_max_iter)
      ->check(CLI::PositiveNumber);

  SolveArgs bounds_args;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Compare Galerkin error bounds with realized errors");
  AddSolveOptions(bounds, bounds_args, true);

  SolveArgs certify_args;
  CLI::App* certify = app.add_subcommand(
      "certify", "Run the Galerkin solver and report its optimality certificate");
  AddSolveOptions(certify, certify_args, true);

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("--n", gen_args.n)->required()->check(CLI::PositiveNumber);
  gen->add_option("--k", gen_args.k)->required()->check(CLI::PositiveNumber);
  gen->add_option("--beta", gen_args.beta)->check(CLI::PositiveNumber);
  gen->add_option("--L", gen_args.lipschitz)->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_args.seed);
  gen->add_option("--out", gen_args.out)->required();
  gen->add_option("--basis-out", gen_args.basis_out);

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "Time IPM and Galerkin iterations");
  bench->add_option("--sizes", bench_args.sizes, "Problem sizes")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_option("--k", bench_args.k)->check(CLI::PositiveNumber);
  bench->add_option("--repeats", bench_args.repeats)->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_args.seed);
  bench->add_option("--beta", bench_args.beta)->check(CLI::PositiveNumber);
  bench->add_option("--L", bench_args.lipschitz)->check(CLI::PositiveNumber);
  bench->add_option("--threads", bench_args.threads)->check(CLI::PositiveNumber);
  bench->add_flag("--skip-galerkin", bench_args.skip_galerkin);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  if (argv.empty()) argv.push_back("galvi");

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  Printer printer(out, format == "kv");
  try {
    if (solve->parsed()) return RunSolve(solve_args, printer);
    if (bounds->parsed()) return RunBounds(bounds_args, printer);
    if (certify->parsed()) return RunCertify(certify_args, printer);
    if (gen->parsed()) {
      if (!(gen_args.beta < gen_args.lipschitz)) {
        throw CLI::ValidationError("--beta", "must be smaller than --L");
      }
      return RunGen(gen_args, printer);
    }
    if (bench->parsed()) return RunBench(bench_args, printer);
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // Solver failures: not strongly monotone, Dykstra or IPM breakdown,
    // generator targets missed.
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  }
  return kExitUsage;
}

}  // namespace galvi::cli
