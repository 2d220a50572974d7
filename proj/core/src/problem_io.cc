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

#include "galvi/problem_io.h"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace galvi {
namespace {

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

// Splits into non-empty lines of whitespace-separated tokens, dropping
// comments. Views point into `text`.
std::vector<Line> Tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  while (!text.empty()) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view raw = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Line line{number, {}};
    std::size_t pos = 0;
    while (pos < raw.size()) {
      while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      std::size_t end = pos;
      while (end < raw.size() && !std::isspace(static_cast<unsigned char>(raw[end]))) ++end;
      if (end > pos) line.tokens.push_back(raw.substr(pos, end - pos));
      pos = end;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

double ParseNumber(std::string_view token, int line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, "not a number: '" + std::string(token) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(line, "not a finite number: '" + std::string(token) + "'");
  }
  return value;
}

Eigen::Index ParseCount(std::string_view token, int line, const char* what) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 1) {
    throw ParseError(line, std::string("bad ") + what + " '" +
                               std::string(token) + "'");
  }
  return static_cast<Eigen::Index>(value);
}

void ReadRow(const Line& line, Eigen::Index expected, double* out) {
  if (static_cast<Eigen::Index>(line.tokens.size()) != expected) {
    throw ParseError(line.number,
                     "expected " + std::to_string(expected) + " numbers, got " +
                         std::to_string(line.tokens.size()));
  }
  for (Eigen::Index j = 0; j < expected; ++j) {
    out[j] = ParseNumber(line.tokens[j], line.number);
  }
}

void CheckRowCount(const std::vector<Line>& lines, std::size_t expected,
                   int last_line) {
  if (lines.size() < expected) {
    throw ParseError(last_line, "unexpected end of input: expected " +
                                    std::to_string(expected - 1) +
                                    " data lines, got " +
                                    std::to_string(lines.size() - 1));
  }
  if (lines.size() > expected) {
    throw ParseError(lines[expected].number, "unexpected extra line");
  }
}

void AppendRow(std::string& out, const double* values, Eigen::Index count) {
  for (Eigen::Index j = 0; j < count; ++j) {
    if (j > 0) out += ' ';
    out += FormatDouble(values[j]);
  }
  out += '\n';
}

int LastLineNumber(std::string_view text) {
  int lines = 1;
  for (char c : text) lines += c == '\n';
  return lines;
}

}  // namespace

std::string FormatDouble(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(),
                                       value, std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

ProblemData ParseProblem(std::string_view text) {
  const std::vector<Line> lines = Tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty problem file");
  const Line& header = lines.front();
  if (header.tokens.size() != 3 || header.tokens[0] != "VI1") {
    throw ParseError(header.number, "header must be 'VI1 <n> <cone-spec>'");
  }
  const Eigen::Index n = ParseCount(header.tokens[1], header.number, "dimension");
  SeparableCone cone = [&] {
    try {
      return SeparableCone::Parse(header.tokens[2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(header.number, e.what());
    }
  }();
  if (cone.dim() != n) {
    throw ParseError(header.number, "cone dimension " +
                                        std::to_string(cone.dim()) +
                                        " does not match n = " +
                                        std::to_string(n));
  }
  CheckRowCount(lines, static_cast<std::size_t>(n) + 2, LastLineNumber(text));

  // Row-major scratch, copied into Eigen's column-major storage.
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    ReadRow(lines[i + 1], n, m.row(i).data());
  }
  Vector q(n);
  ReadRow(lines[n + 1], n, q.data());
  return {Matrix(m), std::move(q), std::move(cone)};
}

std::string WriteProblem(const Matrix& m, const Vector& q,
                         const SeparableCone& cone) {
  const Eigen::Index n = q.size();
  CheckDimension(m.rows(), n, "WriteProblem M rows");
  CheckDimension(m.cols(), n, "WriteProblem M cols");
  CheckDimension(cone.dim(), n, "WriteProblem cone");
  std::string out = "VI1 " + std::to_string(n) + " " + cone.ToString() + "\n";
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      rows = m;
  for (Eigen::Index i = 0; i < n; ++i) AppendRow(out, rows.row(i).data(), n);
  AppendRow(out, q.data(), n);
  return out;
}

Matrix ParseBasis(std::string_view text) {
  const std::vector<Line> lines = Tokenize(text);
  if (lines.empty()) throw ParseError(1, "empty basis file");
  const Line& header = lines.front();
  if (header.tokens.size() != 3 || header.tokens[0] != "BASIS1") {
    throw ParseError(header.number, "header must be 'BASIS1 <n> <k>'");
  }
  const Eigen::Index n = ParseCount(header.tokens[1], header.number, "n");
  const Eigen::Index k = ParseCount(header.tokens[2], header.number, "k");
  CheckRowCount(lines, static_cast<std::size_t>(n) + 1, LastLineNumber(text));
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> phi(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    ReadRow(lines[i + 1], k, phi.row(i).data());
  }
  return Matrix(phi);
}

std::string WriteBasis(const Matrix& phi) {
  std::string out = "BASIS1 " + std::to_string(phi.rows()) + " " +
                    std::to_string(phi.cols()) + "\n";
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
      rows = phi;
  for (Eigen::Index i = 0; i < phi.rows(); ++i) {
    AppendRow(out, rows.row(i).data(), phi.cols());
  }
  return out;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace galvi
