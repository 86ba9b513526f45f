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

#include "bqt/cli/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "bqt/analytic.hpp"
#include "bqt/cli/json_io.hpp"
#include "bqt/resources.hpp"
#include "bqt/sdp.hpp"
#include "bqt/verify.hpp"

namespace bqt::cli {

using nlohmann::json;

Kind parse_kind(const std::string& s) {
  if (s == "none") return Kind::none;
  if (s == "isotropic") return Kind::isotropic;
  if (s == "gadc") return Kind::gadc;
  if (s == "state" || s == "state-file") return Kind::state;
  throw ValidationError("unknown resource kind '" + s + "'");
}

Method parse_method(const std::string& s) {
  if (s == "analytic") return Method::analytic;
  if (s == "sdp") return Method::sdp;
  if (s == "both") return Method::both;
  throw ValidationError("unknown method '" + s + "'");
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ValidationError("unknown format '" + s + "'");
}

const char* to_string(Kind k) {
  switch (k) {
    case Kind::none:
      return "none";
    case Kind::isotropic:
      return "isotropic";
    case Kind::gadc:
      return "gadc";
    case Kind::state:
      return "state";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kMaxGridPoints = 1000000;

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ValidationError("not a number: '" + s + "'");
  return v;
}

Index as_count(double v, const std::string& name) {
  if (v != std::floor(v) || std::abs(v) > 1e6) {
    throw ValidationError("--" + name + " must be an integer");
  }
  return static_cast<Index>(v);
}

bool relevant(Kind k, const std::string& name) {
  switch (k) {
    case Kind::none:
    case Kind::state:
      return name == "d";
    case Kind::isotropic:
      return name == "d" || name == "fidelity" || name == "dim-resource";
    case Kind::gadc:
      return name == "gamma" || name == "noise" || name == "d";
  }
  return false;
}

void set_param(Point& p, const std::string& name, double v) {
  if (name == "d") {
    p.d = as_count(v, name);
  } else if (name == "fidelity") {
    p.fidelity = v;
  } else if (name == "dim-resource") {
    p.dimResource = as_count(v, name);
  } else if (name == "gamma") {
    p.gamma = v;
  } else if (name == "noise") {
    p.noise = v;
  } else {
    throw ValidationError("unknown parameter '" + name + "'");
  }
}

bool converged(sdp::SolverStatus s) {
  return s == sdp::SolverStatus::optimal || s == sdp::SolverStatus::nearOptimal;
}

BipartiteState no_resource_state() { return BipartiteState(2, 2, DensityMatrix::maximally_mixed(4)); }

void validate_point(Kind kind, const Point& p, Method method) {
  if (p.d < 2) throw ValidationError("--d must be at least 2");
  switch (kind) {
    case Kind::none:
      break;
    case Kind::isotropic:
      IsotropicParams{p.fidelity, p.dimResource}.validate();
      if (p.dimResource * p.dimResource > kMaxJointDimension && method != Method::analytic) {
        throw ValidationError("--dim-resource too large for the SDP");
      }
      break;
    case Kind::gadc:
      GadcParams{p.gamma, p.noise}.validate();
      if (p.d != 2 && method != Method::sdp) {
        throw ValidationError("the closed form for gadc needs --d 2");
      }
      break;
    case Kind::state:
      if (method != Method::sdp) throw ValidationError("a state file only supports --method sdp");
      break;
  }
}

BipartiteState resource_for(Kind kind, const Point& p, const BipartiteState* state) {
  switch (kind) {
    case Kind::none:
      return no_resource_state();
    case Kind::isotropic:
      return isotropic_state({p.fidelity, p.dimResource});
    case Kind::gadc:
      return gadc_resource_state({p.gamma, p.noise});
    case Kind::state:
      if (state == nullptr) throw ValidationError("kind 'state' needs --state FILE");
      return *state;
  }
  throw ValidationError("unknown kind");
}

}  // namespace

std::vector<double> Range::values() const {
  const double span = (stop - start) / step;
  const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  if (n > kMaxGridPoints) throw ValidationError("range has too many points");
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = start + static_cast<double>(i) * step;
    out.push_back(std::round(v * 1e12) / 1e12);
  }
  return out;
}

Range parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (!text.empty() && text.back() == ':') parts.push_back("");
  Range r;
  if (parts.size() == 1) {
    r.start = r.stop = parse_number(parts[0]);
    return r;
  }
  if (parts.size() != 3) throw ValidationError("range must be 'start:stop:step', got '" + text + "'");
  r.start = parse_number(parts[0]);
  r.stop = parse_number(parts[1]);
  r.step = parse_number(parts[2]);
  if (!(r.step > 0.0)) throw ValidationError("range step must be positive");
  if (r.start > r.stop) throw ValidationError("range start exceeds stop");
  return r;
}

std::vector<Point> grid(const SweepSpec& spec) {
  if (spec.axes.size() > 2) throw ValidationError("at most two sweep axes");
  std::vector<Point> points{spec.base};
  for (const auto& axis : spec.axes) {
    std::vector<Point> next;
    for (const auto& p : points) {
      for (double v : axis.values) {
        Point q = p;
        set_param(q, axis.name, v);
        next.push_back(q);
      }
    }
    points = std::move(next);
  }
  return points;
}

ResultRow evaluate(Kind kind, const Point& p, Method method, const BipartiteState* state,
                   const sdp::SolveOptions& options) {
  validate_point(kind, p, method);
  ResultRow row;
  row.kind = kind;
  row.point = p;
  if (method != Method::sdp) {
    switch (kind) {
      case Kind::none:
        row.analytic = no_resource_error(p.d);
        row.loccTight = true;
        break;
      case Kind::isotropic: {
        const ErrorBranch e = isotropic_error(p.d, p.fidelity, p.dimResource);
        row.analytic = e.value;
        row.branch = to_string(e.branch);
        row.loccTight = e.loccTight;
        break;
      }
      case Kind::gadc:
        row.analytic = gadc_error(p.gamma, p.noise);
        break;
      case Kind::state:
        break;
    }
  }
  if (method != Method::analytic) {
    try {
      const SdpSolution s = ppt_simulation_error(resource_for(kind, p, state), p.d, options);
      row.sdp = s.value;
      row.iterations = s.iterations;
      row.residual = s.maxResidual;
      row.status = sdp::to_string(s.status);
      row.solverFailed = !converged(s.status);
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
      row.solverFailed = true;
    }
  }
  if (row.analytic && row.sdp) row.discrepancy = std::abs(*row.analytic - *row.sdp);
  return row;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, const sdp::SolveOptions& options) {
  const std::vector<Point> points = grid(spec);
  for (const auto& p : points) validate_point(spec.kind, p, spec.method);
  std::optional<BipartiteState> state;
  if (spec.kind == Kind::state) state = io::read_state_file(spec.statePath);
  const BipartiteState* rho = state ? &*state : nullptr;

  std::vector<ResultRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        rows[i] = evaluate(spec.kind, points[i], spec.method, rho, options);
      } catch (const std::exception& e) {
        rows[i].kind = spec.kind;
        rows[i].point = points[i];
        rows[i].status = std::string("error: ") + e.what();
        rows[i].solverFailed = true;
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(spec.jobs, static_cast<int>(points.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

const char* kColumns[] = {"kind",  "d",           "fidelity", "dim_resource", "gamma",
                          "noise", "analytic",    "sdp",      "discrepancy",  "branch",
                          "locc_tight", "status", "iterations", "residual"};

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (std::size_t k = 0; k < std::size(kColumns); ++k) out << (k ? "," : "") << kColumns[k];
  out << '\n';
  for (const auto& r : rows) {
    const Kind k = r.kind;
    const Point& p = r.point;
    auto param = [&](const char* name, double v) {
      return relevant(k, name) ? format_number(v) : std::string();
    };
    out << to_string(k) << ',' << param("d", static_cast<double>(p.d)) << ','
        << param("fidelity", p.fidelity) << ','
        << param("dim-resource", static_cast<double>(p.dimResource)) << ','
        << param("gamma", p.gamma) << ',' << param("noise", p.noise) << ',' << opt(r.analytic)
        << ',' << opt(r.sdp) << ',' << opt(r.discrepancy) << ',' << r.branch.value_or("") << ','
        << (r.loccTight ? (*r.loccTight ? "true" : "false") : "") << ',' << csv_field(r.status)
        << ',' << (r.iterations ? std::to_string(*r.iterations) : "") << ',' << opt(r.residual)
        << '\n';
  }
}

json rows_to_json(const std::vector<ResultRow>& rows) {
  json list = json::array();
  auto opt_json = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& r : rows) {
    json j;
    j["kind"] = to_string(r.kind);
    const Point& p = r.point;
    if (relevant(r.kind, "d")) j["d"] = p.d;
    if (relevant(r.kind, "fidelity")) j["fidelity"] = p.fidelity;
    if (relevant(r.kind, "dim-resource")) j["dim_resource"] = p.dimResource;
    if (relevant(r.kind, "gamma")) j["gamma"] = p.gamma;
    if (relevant(r.kind, "noise")) j["noise"] = p.noise;
    j["analytic"] = opt_json(r.analytic);
    j["sdp"] = opt_json(r.sdp);
    j["discrepancy"] = opt_json(r.discrepancy);
    j["branch"] = opt_json(r.branch);
    j["locc_tight"] = opt_json(r.loccTight);
    j["status"] = r.status;
    j["iterations"] = opt_json(r.iterations);
    j["residual"] = opt_json(r.residual);
    list.push_back(std::move(j));
  }
  return {{"format", "bqt-bench v1"}, {"rows", list}};
}

namespace {

struct Flags {
  std::string kind;
  std::string d = "2";
  std::string fidelity = "1";
  std::string dimResource = "2";
  std::string gamma = "0";
  std::string noise = "0";
  std::string method;
  std::string state;
  std::string out;
  std::string format = "csv";
  int jobs = 1;
  std::uint64_t seed = 20201015;
  int symmetryTrials = 50;
};

struct ParamFlag {
  const char* name;
  std::string Flags::*field;
};

constexpr ParamFlag kParams[] = {{"d", &Flags::d},
                                 {"fidelity", &Flags::fidelity},
                                 {"dim-resource", &Flags::dimResource},
                                 {"gamma", &Flags::gamma},
                                 {"noise", &Flags::noise}};

void add_resource_options(CLI::App* sub, Flags& f, bool ranges) {
  const std::string hint = ranges ? " (value or start:stop:step)" : "";
  sub->add_option("kind", f.kind, "none | isotropic | gadc | state")->required();
  sub->add_option("--d", f.d, "dimension of each swapped system" + hint);
  sub->add_option("--fidelity", f.fidelity, "isotropic overlap F" + hint);
  sub->add_option("--dim-resource", f.dimResource, "isotropic local dimension" + hint);
  sub->add_option("--gamma", f.gamma, "GADC damping" + hint);
  sub->add_option("--noise", f.noise, "GADC noise N" + hint);
  sub->add_option("--state", f.state, "resource state JSON file");
}

/// Splits the flags into a base point and the ranged axes.
SweepSpec spec_from(const Flags& f, const CLI::App* sub, bool allow_axes) {
  SweepSpec spec;
  spec.kind = parse_kind(f.kind);
  spec.method = f.method.empty() ? (spec.kind == Kind::state ? Method::sdp : Method::analytic)
                                 : parse_method(f.method);
  spec.format = parse_format(f.format);
  spec.statePath = f.state;
  spec.out = f.out;
  spec.jobs = f.jobs;
  if (f.jobs < 1) throw ValidationError("--jobs must be positive");
  if (spec.kind == Kind::state && f.state.empty()) throw ValidationError("kind 'state' needs --state FILE");
  for (const auto& pf : kParams) {
    const Range r = parse_range(f.*pf.field);
    const bool given = sub->count(std::string("--") + pf.name) > 0;
    if (given && !relevant(spec.kind, pf.name)) {
      throw ValidationError(std::string("--") + pf.name + " does not apply to kind '" +
                            to_string(spec.kind) + "'");
    }
    if (r.single()) {
      set_param(spec.base, pf.name, r.start);
      continue;
    }
    if (!allow_axes) throw ValidationError(std::string("--") + pf.name + " takes a single value here");
    spec.axes.push_back({pf.name, r.values()});
  }
  if (spec.axes.size() > 2) throw ValidationError("at most two sweep axes");
  return spec;
}

sdp::SolveOptions solve_options() {
  sdp::SolveOptions o;
  o.tolerance = sdp::solver_tolerance_from_env(o.tolerance);
  if (const char* raw = std::getenv("BQT_SOLVER_MAX_ITER"); raw != nullptr && *raw != '\0') {
    const double v = parse_number(raw);
    if (v < 1 || v != std::floor(v) || v > 1e6) {
      throw ValidationError("BQT_SOLVER_MAX_ITER must be a positive integer");
    }
    o.maxIterations = static_cast<int>(v);
  }
  return o;
}

int cmd_error(const Flags& f, const CLI::App* sub, std::ostream& out) {
  const SweepSpec spec = spec_from(f, sub, false);
  std::optional<BipartiteState> state;
  if (spec.kind == Kind::state) state = io::read_state_file(spec.statePath);
  const ResultRow row =
      evaluate(spec.kind, spec.base, spec.method, state ? &*state : nullptr, solve_options());
  if (spec.format == Format::json) {
    out << rows_to_json({row})["rows"][0].dump(2) << '\n';
  } else {
    write_csv(out, {row});
  }
  return row.solverFailed ? kSolverFailure : kOk;
}

int cmd_sweep(const Flags& f, const CLI::App* sub, std::ostream& out, std::ostream& err) {
  const SweepSpec spec = spec_from(f, sub, true);
  std::ofstream file;
  if (!spec.out.empty()) {
    file.open(spec.out, std::ios::binary | std::ios::trunc);
    if (!file) throw ValidationError("cannot write '" + spec.out + "'");
  }
  const std::vector<ResultRow> rows = run_sweep(spec, solve_options());
  std::ostream& dest = spec.out.empty() ? out : file;
  if (spec.format == Format::json) {
    dest << rows_to_json(rows).dump(2) << '\n';
  } else {
    write_csv(dest, rows);
  }
  if (file.is_open()) {
    file.close();
    if (!file) throw ValidationError("failed writing '" + spec.out + "'");
  }
  std::size_t failures = 0;
  std::optional<double> worst;
  for (const auto& r : rows) {
    failures += r.solverFailed ? 1 : 0;
    if (r.discrepancy) worst = std::max(worst.value_or(0.0), *r.discrepancy);
  }
  std::ostream& summary = spec.out.empty() ? err : out;
  summary << "rows=" << rows.size() << " solver_failures=" << failures
          << " max_discrepancy=" << (worst ? format_number(*worst) : std::string("n/a")) << '\n';
  return kOk;
}

int cmd_verify(const Flags& f, const CLI::App* sub, std::ostream& out) {
  const SweepSpec spec = spec_from(f, sub, false);
  const Point& p = spec.base;
  validate_point(spec.kind, p, Method::sdp);
  std::optional<BipartiteState> state;
  if (spec.kind == Kind::state) state = io::read_state_file(spec.statePath);
  const BipartiteState rho = resource_for(spec.kind, p, state ? &*state : nullptr);
  const sdp::SolveOptions options = solve_options();

  json report;
  report["kind"] = to_string(spec.kind);
  report["d"] = p.d;
  if (spec.kind == Kind::isotropic) {
    report["fidelity"] = p.fidelity;
    report["dim_resource"] = p.dimResource;
    report["analytic"] = isotropic_error(p.d, p.fidelity, p.dimResource).value;
  } else if (spec.kind == Kind::gadc) {
    report["gamma"] = p.gamma;
    report["noise"] = p.noise;
    if (p.d == 2) report["analytic"] = gadc_error(p.gamma, p.noise);
  } else if (spec.kind == Kind::none) {
    report["analytic"] = no_resource_error(p.d);
  }

  const SdpSolution sol = ppt_simulation_error(rho, p.d, options);
  report["sdp"] = sol.value;
  report["sdp_status"] = sdp::to_string(sol.status);
  report["witness_residual"] = ppt_constraint_residual(sol.witness, rho.dimA(), rho.dimB(), p.d);
  int code = kOk;
  if (!converged(sol.status)) {
    code = kSolverFailure;
  } else {
    const ReconstructedChannel ch = build_reconstructed_channel(sol.witness, rho, p.d);
    const DiamondResult achieved = achieved_error_result(ch, options);
    const CpptpReport full = check_cpptp(full_choi(ch), full_dims(ch));
    const CpptpReport effective = check_cpptp(ch.realized, {p.d, p.d, p.d, p.d});
    const bool symmetric = verify_swap_symmetry(p.d, f.symmetryTrials, f.seed);
    const double gap = std::abs(achieved.value - sol.value);
    report["achieved"] = achieved.value;
    report["achieved_status"] = sdp::to_string(achieved.status);
    report["difference"] = gap;
    report["p_k"] = ch.pK;
    report["p_l"] = ch.pL;
    report["p_n"] = ch.pN;
    report["cpptp"] = full.ok;
    report["cpptp_min_eigenvalue"] = full.minEigenvalue;
    report["effective_cpptp"] = effective.ok;
    report["effective_min_eigenvalue"] = effective.minEigenvalue;
    report["swap_symmetry"] = symmetric;
    report["symmetry_trials"] = f.symmetryTrials;
    report["seed"] = f.seed;
    const bool consistent = gap <= 1e-4 && full.ok && symmetric;
    report["consistent"] = consistent;
    if (!converged(achieved.status)) {
      code = kSolverFailure;
    } else if (!consistent) {
      code = kCheckFailed;
    }
  }
  if (spec.format == Format::json) {
    out << report.dump(2) << '\n';
  } else {
    for (const auto& [key, value] : report.items()) {
      out << key << ": ";
      if (value.is_number_float()) {
        out << format_number(value.get<double>());
      } else if (value.is_string()) {
        out << value.get<std::string>();
      } else {
        out << value.dump();
      }
      out << '\n';
    }
  }
  return code;
}

int cmd_diamond(const std::string& a, const std::string& b, const std::string& format,
                std::ostream& out) {
  const Format fmt = parse_format(format);
  const ChoiMatrix ca = io::read_channel_file(a);
  const ChoiMatrix cb = io::read_channel_file(b);
  const DiamondResult r = diamond_distance_result(ca, cb, solve_options());
  if (fmt == Format::json) {
    out << json{{"diamond_distance", r.value}, {"status", sdp::to_string(r.status)}}.dump(2)
        << '\n';
  } else {
    out << format_number(r.value) << '\n';
  }
  return converged(r.status) ? kOk : kSolverFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation error of bidirectional teleportation under PPT channels", "bqt"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* error = app.add_subcommand("error", "error of a single resource");
  add_resource_options(error, f, false);
  error->add_option("--method", f.method, "analytic | sdp | both");
  error->add_option("--format", f.format, "csv | json");

  CLI::App* sweep = app.add_subcommand("sweep", "grid of errors, one row per point");
  add_resource_options(sweep, f, true);
  sweep->add_option("--method", f.method, "analytic | sdp | both");
  sweep->add_option("--out", f.out, "output file (default stdout)");
  sweep->add_option("--format", f.format, "csv | json");
  sweep->add_option("--jobs", f.jobs, "concurrent solves");

  CLI::App* verify = app.add_subcommand("verify", "SDP witness to channel to achieved error");
  add_resource_options(verify, f, false);
  verify->add_option("--format", f.format, "text | json");
  verify->add_option("--seed", f.seed, "seed of the swap symmetry check");
  verify->add_option("--symmetry-trials", f.symmetryTrials, "random trials of the symmetry check");

  std::string pathA, pathB;
  CLI::App* diamond = app.add_subcommand("diamond", "diamond distance of two channel files");
  diamond->add_option("a", pathA, "first channel JSON")->required();
  diamond->add_option("b", pathB, "second channel JSON")->required();
  diamond->add_option("--format", f.format, "csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*error) return cmd_error(f, error, out);
    if (*sweep) return cmd_sweep(f, sweep, out, err);
    if (*verify) {
      if (f.format == "text") f.format = "csv";
      return cmd_verify(f, verify, out);
    }
    if (*diamond) return cmd_diamond(pathA, pathB, f.format, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const sdp::SolverError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kValidation;
}

}  // namespace bqt::cli
