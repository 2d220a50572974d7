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

#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "galvi/problem_io.h"

namespace galvi::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "galvi");
  std::ostringstream out, err;
  Result r;
  r.code = RunCli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::map<std::string, std::string> ParseKv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    if (tab != std::string::npos) kv[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return kv;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("galvi_cli_test_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  void Generate(int n, int k, int seed) {
    const Result r = Invoke({"gen", "--n", std::to_string(n), "--k", std::to_string(k),
                          "--beta", "1", "--L", "4", "--seed", std::to_string(seed),
                          "--out", Path("f.vi"), "--basis-out", Path("b.mat")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }

  fs::path dir_;
};

TEST_F(CliTest, GenThenEveryMethod) {
  Generate(40, 8, 7);
  for (const char* method : {"exact", "bertsekas", "galerkin", "ipm"}) {
    const Result r = Invoke({"--format", "kv", "solve", "--method", method,
                          "--problem", Path("f.vi"), "--basis", Path("b.mat")});
    EXPECT_EQ(r.code, kExitOk) << method << "\n" << r.err;
    const auto kv = ParseKv(r.out);
    EXPECT_EQ(kv.at("method"), method);
    EXPECT_EQ(kv.at("converged"), "true");
    EXPECT_TRUE(kv.count("iters"));
    EXPECT_TRUE(kv.count("residual"));
    EXPECT_TRUE(kv.count("x"));
  }
}

TEST_F(CliTest, SolveTextOutputAndTrace) {
  WriteTextFile(Path("small.vi"), "VI1 2 nn:2\n1 0\n0 1\n-1 1\n");
  const Result r = Invoke({"solve", "--method", "exact", "--problem", Path("small.vi"),
                        "--trace", Path("trace.tsv")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("residual"), std::string::npos);
  const std::string trace = ReadTextFile(Path("trace.tsv"));
  EXPECT_NE(trace.find('\t'), std::string::npos);
}

TEST_F(CliTest, BoundsReportsVerdicts) {
  Generate(40, 8, 7);
  const Result r = Invoke({"--format", "kv", "bounds", "--problem", Path("f.vi"),
                        "--basis", Path("b.mat")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto kv = ParseKv(r.out);
  for (const char* key : {"gamma", "iters", "bound_bertsekas", "bound_new",
                          "err_bertsekas", "err_new", "cert_nullspace",
                          "cert_normalcone"}) {
    EXPECT_TRUE(kv.count(key)) << key;
  }
  EXPECT_EQ(kv.at("verdict_bertsekas"), "OK");
  EXPECT_EQ(kv.at("verdict_new"), "OK");
}

TEST_F(CliTest, CertifyNullSpace) {
  Generate(30, 5, 3);
  const Result r = Invoke({"--format", "kv", "certify", "--problem", Path("f.vi"),
                        "--basis", Path("b.mat")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto kv = ParseKv(r.out);
  EXPECT_EQ(kv.at("cert_normalcone"), "true");
  const double eps = std::stod(kv.at("cert_epsilon_norm"));
  EXPECT_LE(std::stod(kv.at("cert_nullspace")), 1e-8 * (1 + eps));
}

TEST_F(CliTest, Deterministic) {
  Generate(20, 4, 11);
  const std::string first = ReadTextFile(Path("f.vi"));
  const std::vector<std::string> args = {"--format", "kv", "solve", "--method",
                                         "galerkin", "--problem", Path("f.vi"),
                                         "--basis", Path("b.mat")};
  const Result a = Invoke(args);
  Generate(20, 4, 11);
  EXPECT_EQ(ReadTextFile(Path("f.vi")), first);
  const Result b = Invoke(args);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, NotConvergedExitsOne) {
  Generate(20, 4, 1);
  const Result r = Invoke({"solve", "--method", "exact", "--problem", Path("f.vi"),
                        "--max-iter", "2"});
  EXPECT_EQ(r.code, kExitNotConverged);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  Result r = Invoke({"solve", "--method", "exact", "--bogus"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Invoke({}).code, kExitUsage);
  EXPECT_EQ(Invoke({"solve", "--method", "newton", "--problem", "x"}).code, kExitUsage);

  WriteTextFile(Path("bad.vi"), "VI1 2 nn:2\n1 0\n0 1\n1 1\n5 5\n");
  r = Invoke({"solve", "--method", "exact", "--problem", Path("bad.vi")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("line 5"), std::string::npos) << r.err;

  EXPECT_EQ(Invoke({"solve", "--method", "exact", "--problem", Path("missing.vi")}).code,
            kExitUsage);
  EXPECT_EQ(Invoke({"gen", "--n", "5", "--k", "2", "--beta", "4", "--L", "1",
                 "--out", Path("g.vi")})
                .code,
            kExitUsage);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
}

TEST_F(CliTest, BenchSmall) {
  const Result r = Invoke({"--format", "kv", "bench", "--sizes", "50,100", "--k", "5",
                        "--repeats", "2"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("ipm_growth"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace galvi::cli
