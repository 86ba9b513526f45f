// Copyright 2026 The bqt-bench Authors
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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bqt/qcore.hpp"
#include "bqt/sdp/program.hpp"

namespace bqt::cli {

enum class Kind { none, isotropic, gadc, state };
enum class Method { analytic, sdp, both };
enum class Format { csv, json };

Kind parse_kind(const std::string& s);
Method parse_method(const std::string& s);
Format parse_format(const std::string& s);
const char* to_string(Kind k);

/// "v" or "start:stop:step"; start <= stop, step > 0.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  bool single() const { return start == stop; }
  std::vector<double> values() const;
};

Range parse_range(const std::string& text);

struct Point {
  Index d = 2;
  double fidelity = 1.0;
  Index dimResource = 2;
  double gamma = 0.0;
  double noise = 0.0;
};

struct Axis {
  std::string name;  // one of d, fidelity, dim-resource, gamma, noise
  std::vector<double> values;
};

struct SweepSpec {
  Kind kind = Kind::none;
  Method method = Method::analytic;
  Point base;
  std::vector<Axis> axes;  // at most two, first axis outermost
  std::string statePath;
  std::string out;  // empty for stdout
  Format format = Format::csv;
  int jobs = 1;
};

/// Grid points in row-major order over the axes.
std::vector<Point> grid(const SweepSpec& spec);

struct ResultRow {
  Kind kind = Kind::none;
  Point point;
  std::optional<double> analytic;
  std::optional<double> sdp;
  std::optional<double> discrepancy;
  std::optional<std::string> branch;
  std::optional<bool> loccTight;
  std::string status = "ok";
  std::optional<int> iterations;
  std::optional<double> residual;
  bool solverFailed = false;
};

/**
 * Evaluates one point. Throws ValidationError for bad parameters; solver
 * trouble is reported through `status` and `solverFailed`.
 */
ResultRow evaluate(Kind kind, const Point& p, Method method, const BipartiteState* state,
                   const sdp::SolveOptions& options);

std::vector<ResultRow> run_sweep(const SweepSpec& spec, const sdp::SolveOptions& options);

inline constexpr const char* kCsvHeader = "# bqt-bench v1";
std::string format_number(double v);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
nlohmann::json rows_to_json(const std::vector<ResultRow>& rows);

enum ExitCode { kOk = 0, kCheckFailed = 1, kValidation = 2, kSolverFailure = 3 };

/// Entry point of the `bqt` tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bqt::cli
