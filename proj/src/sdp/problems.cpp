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

#include "bqt/sdp.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>

namespace bqt {

namespace sdp {

double solver_tolerance_from_env(double fallback) {
  const char* raw = std::getenv("BQT_SOLVER_TOL");
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0) || v >= 1.0) {
    throw ValidationError(std::string("BQT_SOLVER_TOL must be a number in (0, 1), got '") + raw +
                          "'");
  }
  return v;
}

}  // namespace sdp

namespace {

bool converged(sdp::SolverStatus s) {
  return s == sdp::SolverStatus::optimal || s == sdp::SolverStatus::nearOptimal;
}

}  // namespace

PptSimulationProgram build_ppt_simulation_program(const BipartiteState& rho, Index d) {
  if (d < 2) throw ValidationError("swap dimension d must be at least 2");
  if (rho.dim() > kMaxJointDimension) {
    throw ValidationError("resource dimension " + std::to_string(rho.dim()) + " exceeds " +
                          std::to_string(kMaxJointDimension));
  }
  PptSimulationProgram p;
  p.dimA = rho.dimA();
  p.dimB = rho.dimB();
  p.d = d;
  const Index n = rho.dim();
  auto& prog = p.program;
  p.k = prog.add_variable("K", n);
  p.l = prog.add_variable("L", n);
  p.n = prog.add_variable("N", n);

  const std::array<Index, 2> dims{p.dimA, p.dimB};
  const std::array<int, 1> second{1};
  const auto id = sdp::EntryMap::identity(n);
  const auto t = sdp::EntryMap::partial_transpose(dims, second);
  const double dd = static_cast<double>(d);

  prog.add_psd("K", sdp::AffineExpr(n).add(p.k, 1.0, id));
  prog.add_psd("L", sdp::AffineExpr(n).add(p.l, 1.0, id));
  prog.add_psd("N", sdp::AffineExpr(n).add(p.n, 1.0, id));
  prog.add_psd("i", sdp::AffineExpr(n)
                        .add(p.k, 1.0, t)
                        .add(p.l, 1.0 / (dd + 1.0), t)
                        .add(p.n, 1.0 / ((dd + 1.0) * (dd + 1.0)), t));
  prog.add_psd("ii", sdp::AffineExpr(n)
                         .add(p.l, 1.0 / (dd * dd - 1.0), t)
                         .add(p.n, 1.0 / (dd * dd - 1.0), t)
                         .add(p.k, -1.0, t));
  prog.add_psd("iii", sdp::AffineExpr(n)
                          .add(p.k, 1.0, t)
                          .add(p.n, 1.0 / ((dd - 1.0) * (dd - 1.0)), t)
                          .add(p.l, -1.0 / (dd - 1.0), t));
  prog.add_equality("completeness", sdp::AffineExpr(n)
                                        .add(p.k, 1.0, id)
                                        .add(p.l, 1.0, id)
                                        .add(p.n, 1.0, id)
                                        .plus(-ComplexMatrix::Identity(n, n)));
  prog.set_objective(p.k, rho.matrix());
  return p;
}

SdpSolution solve(const PptSimulationProgram& p, const sdp::SolveOptions& options) {
  const sdp::ProgramSolution s = sdp::solve(p.program, options);
  SdpSolution out;
  out.status = s.status;
  out.iterations = s.iterations;
  out.realField = s.realField;
  out.maxResidual = s.maxResidual;
  out.value = 1.0 - s.objective;
  out.clippedValue = std::clamp(out.value, 0.0, 1.0);

  double lowest = 0.0;
  auto finish = [&](const ComplexMatrix& m) {
    const ComplexMatrix h = (m + m.adjoint()) / 2.0;
    lowest = std::min(lowest, min_eigenvalue(h));
    return clip_to_psd(h);
  };
  out.witness.k = finish(s.values[p.k]);
  out.witness.l = finish(s.values[p.l]);
  out.witness.n = finish(s.values[p.n]);
  out.witnessMinEigenvalue = lowest;
  return out;
}

SdpSolution ppt_simulation_error(const BipartiteState& rho, Index d,
                                 const sdp::SolveOptions& options) {
  return solve(build_ppt_simulation_program(rho, d), options);
}

double ppt_constraint_residual(const PovmTriple& povm, Index dimA, Index dimB, Index d) {
  const Index n = dimA * dimB;
  for (const auto* m : {&povm.k, &povm.l, &povm.n}) {
    if (m->rows() != n || m->cols() != n) throw ValidationError("POVM element has wrong size");
  }
  const std::array<Index, 2> dims{dimA, dimB};
  const std::array<int, 1> second{1};
  auto pt = [&](const ComplexMatrix& m) { return partial_transpose(m, dims, second); };
  auto below_zero = [](const ComplexMatrix& m) {
    return std::max(0.0, -min_eigenvalue((m + m.adjoint()) / 2.0));
  };
  const double dd = static_cast<double>(d);
  const ComplexMatrix& k = povm.k;
  const ComplexMatrix& l = povm.l;
  const ComplexMatrix& nn = povm.n;
  double worst = 0.0;
  for (const auto* m : {&k, &l, &nn}) worst = std::max(worst, below_zero(*m));
  worst = std::max(worst, below_zero(pt(k + l / (dd + 1.0) + nn / ((dd + 1.0) * (dd + 1.0)))));
  worst = std::max(worst, below_zero(pt(l + nn) / (dd * dd - 1.0) - pt(k)));
  worst = std::max(worst, below_zero(pt(k + nn / ((dd - 1.0) * (dd - 1.0))) - pt(l) / (dd - 1.0)));
  const ComplexMatrix sum = k + l + nn - ComplexMatrix::Identity(n, n);
  worst = std::max(worst, sum.cwiseAbs().maxCoeff());
  return worst;
}

DiamondResult diamond_distance_result(const ChoiMatrix& a, const ChoiMatrix& b,
                                      const sdp::SolveOptions& options) {
  if (a.dimIn() != b.dimIn() || a.dimOut() != b.dimOut()) {
    throw ValidationError("diamond_distance: channel dimensions differ");
  }
  const Index din = a.dimIn();
  const Index n = din * a.dimOut();
  const ComplexMatrix j = a.matrix() - b.matrix();

  sdp::SdpProgram prog;
  const auto z = prog.add_variable("Z", n);
  const auto t = prog.add_variable("t", 1);
  const auto id = sdp::EntryMap::identity(n);
  prog.add_psd("Z", sdp::AffineExpr(n).add(z, 1.0, id));
  prog.add_psd("Z-J", sdp::AffineExpr(n).add(z, 1.0, id).plus(-j));

  const std::array<Index, 2> dims{din, a.dimOut()};
  const std::array<int, 1> out{1};
  sdp::EntryMap scalar(1, din);
  for (Index i = 0; i < din; ++i) scalar.add(0, 0, i, i, 1.0);
  prog.add_psd("bound", sdp::AffineExpr(din)
                            .add(t, 1.0, scalar)
                            .add(z, -1.0, sdp::EntryMap::partial_trace(dims, out)));
  prog.set_objective(t, -ComplexMatrix::Identity(1, 1));

  const sdp::ProgramSolution s = sdp::solve(prog, options);
  DiamondResult r;
  r.value = -s.objective;
  r.status = s.status;
  r.maxResidual = s.maxResidual;
  r.iterations = s.iterations;
  return r;
}

double diamond_distance(const ChoiMatrix& a, const ChoiMatrix& b, const sdp::SolveOptions& options) {
  const DiamondResult r = diamond_distance_result(a, b, options);
  if (!converged(r.status)) {
    throw sdp::SolverError(std::string("diamond distance solve ended with status ") +
                           sdp::to_string(r.status));
  }
  return r.value;
}

}  // namespace bqt
