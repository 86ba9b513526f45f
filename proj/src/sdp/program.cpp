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

#include "bqt/sdp/program.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bqt::sdp {

ComplexMatrix AffineExpr::evaluate(const std::vector<ComplexMatrix>& values) const {
  ComplexMatrix out = constant;
  for (const auto& t : terms) out += t.coef * t.map.apply(values.at(t.variable));
  return out;
}

std::size_t SdpProgram::add_variable(std::string name, Index dim) {
  if (dim < 1) throw ValidationError("variable dimension must be positive");
  variables_.push_back({std::move(name), dim});
  objective_.push_back(ComplexMatrix::Zero(dim, dim));
  return variables_.size() - 1;
}

void SdpProgram::add_psd(std::string name, AffineExpr expr) {
  psd_.push_back({std::move(name), std::move(expr)});
}

void SdpProgram::add_equality(std::string name, AffineExpr expr) {
  equalities_.push_back({std::move(name), std::move(expr)});
}

void SdpProgram::set_objective(std::size_t variable, ComplexMatrix c) {
  if (variable >= variables_.size()) throw ValidationError("objective: unknown variable");
  const Index n = variables_[variable].dim;
  if (c.rows() != n || c.cols() != n) throw ValidationError("objective: size mismatch");
  if (!is_hermitian(c, 1e-12)) throw ValidationError("objective matrix must be Hermitian");
  objective_[variable] = std::move(c);
}

void SdpProgram::validate() const {
  auto check = [&](const NamedExpr& e) {
    const AffineExpr& x = e.expr;
    if (x.dim < 1 || x.constant.rows() != x.dim || x.constant.cols() != x.dim) {
      throw ValidationError("constraint '" + e.name + "': constant has wrong size");
    }
    if (!is_hermitian(x.constant, 1e-12)) {
      throw ValidationError("constraint '" + e.name + "': constant is not Hermitian");
    }
    for (const auto& t : x.terms) {
      if (t.variable >= variables_.size()) {
        throw ValidationError("constraint '" + e.name + "': unknown variable");
      }
      if (t.map.dimIn() != variables_[t.variable].dim || t.map.dimOut() != x.dim) {
        throw ValidationError("constraint '" + e.name + "': term dimension mismatch");
      }
      if (!std::isfinite(t.coef)) {
        throw ValidationError("constraint '" + e.name + "': non-finite coefficient");
      }
    }
  };
  for (const auto& e : psd_) check(e);
  for (const auto& e : equalities_) check(e);
}

double SdpProgram::objective_value(const std::vector<ComplexMatrix>& values) const {
  double v = offset_;
  for (std::size_t k = 0; k < variables_.size(); ++k) {
    v += (objective_[k] * values.at(k)).trace().real();
  }
  return v;
}

RealMatrix embed_hermitian(const ComplexMatrix& h) {
  const Index n = h.rows();
  RealMatrix e(2 * n, 2 * n);
  e.topLeftCorner(n, n) = h.real();
  e.bottomRightCorner(n, n) = h.real();
  e.bottomLeftCorner(n, n) = h.imag();
  e.topRightCorner(n, n) = -h.imag();
  return e;
}

ComplexMatrix unembed_hermitian(const RealMatrix& e) {
  if (e.rows() != e.cols() || e.rows() % 2 != 0) {
    throw ValidationError("unembed_hermitian: size must be even and square");
  }
  const Index n = e.rows() / 2;
  ComplexMatrix h(n, n);
  h.real() = e.topLeftCorner(n, n);
  h.imag() = e.bottomLeftCorner(n, n);
  return h;
}

namespace {

// Y_variable = constant + sum of terms over variables that are still free.
struct Substitution {
  std::size_t variable;
  std::vector<Term> terms;
  ComplexMatrix constant;
};

template <typename Expr>
void substitute(Expr& expr, const Substitution& sub) {
  std::vector<Term> kept;
  kept.reserve(expr.terms.size());
  for (auto& t : expr.terms) {
    if (t.variable != sub.variable) {
      kept.push_back(std::move(t));
      continue;
    }
    for (const auto& s : sub.terms) kept.push_back({s.variable, t.coef * s.coef, s.map.then(t.map)});
    expr.constant += t.coef * t.map.apply(sub.constant);
  }
  expr.terms = std::move(kept);
}

struct HermitianEntry {
  Index row;
  Index col;
  Complex value;
};

using Basis = std::vector<HermitianEntry>;

std::vector<Basis> hermitian_basis(Index n, bool real) {
  const double s = 1.0 / std::numbers::sqrt2;
  std::vector<Basis> basis;
  for (Index a = 0; a < n; ++a) {
    for (Index b = a; b < n; ++b) {
      if (a == b) {
        basis.push_back({{a, a, 1.0}});
        continue;
      }
      basis.push_back({{a, b, s}, {b, a, s}});
      if (!real) basis.push_back({{a, b, Complex(0.0, s)}, {b, a, Complex(0.0, -s)}});
    }
  }
  return basis;
}

double imaginary_scale(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.imag().cwiseAbs().maxCoeff();
}

double magnitude(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Negated, embedded image of a basis element; entries summed and zeros dropped.
std::vector<BlockEntry> block_image(std::vector<HermitianEntry> image, Index n, bool real) {
  std::sort(image.begin(), image.end(), [](const auto& x, const auto& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  std::vector<BlockEntry> out;
  for (std::size_t k = 0; k < image.size();) {
    Complex sum = 0.0;
    const Index r = image[k].row, c = image[k].col;
    for (; k < image.size() && image[k].row == r && image[k].col == c; ++k) sum += image[k].value;
    const int ri = static_cast<int>(r), ci = static_cast<int>(c), ni = static_cast<int>(n);
    if (sum.real() != 0.0) {
      out.push_back({ri, ci, -sum.real()});
      if (!real) out.push_back({ri + ni, ci + ni, -sum.real()});
    }
    if (!real && sum.imag() != 0.0) {
      out.push_back({ri + ni, ci, -sum.imag()});
      out.push_back({ri, ci + ni, sum.imag()});
    }
  }
  return out;
}

}  // namespace

ProgramSolution solve(const SdpProgram& program, const SolveOptions& options) {
  program.validate();
  const auto& vars = program.variables();
  const std::size_t nv = vars.size();

  std::vector<AffineExpr> psd;
  for (const auto& e : program.psd()) psd.push_back(e.expr);
  std::vector<NamedExpr> eqs = program.equalities();
  std::vector<ComplexMatrix> objective = program.objective();
  double offset = program.objective_offset();

  // Eliminate one variable per equality constraint.
  std::vector<bool> eliminated(nv, false);
  std::vector<Substitution> subs;
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    const AffineExpr& eq = eqs[e].expr;
    std::ptrdiff_t pivot = -1;
    for (std::size_t k = eq.terms.size(); k-- > 0;) {
      const Term& t = eq.terms[k];
      if (t.coef == 0.0 || eliminated[t.variable] || !t.map.is_identity()) continue;
      const auto uses = std::count_if(eq.terms.begin(), eq.terms.end(),
                                      [&](const Term& u) { return u.variable == t.variable; });
      if (uses == 1) {
        pivot = static_cast<std::ptrdiff_t>(k);
        break;
      }
    }
    if (pivot < 0) {
      throw ValidationError("equality '" + eqs[e].name +
                            "' has no identity term that can be eliminated");
    }
    const Term& p = eq.terms[static_cast<std::size_t>(pivot)];
    Substitution sub{p.variable, {}, -eq.constant / p.coef};
    for (std::size_t k = 0; k < eq.terms.size(); ++k) {
      if (static_cast<std::ptrdiff_t>(k) == pivot) continue;
      const Term& t = eq.terms[k];
      sub.terms.push_back({t.variable, -t.coef / p.coef, t.map});
    }
    for (auto& x : psd) substitute(x, sub);
    for (std::size_t f = e + 1; f < eqs.size(); ++f) substitute(eqs[f].expr, sub);
    for (auto& s : subs) substitute(s, sub);
    ComplexMatrix& c = objective[sub.variable];
    for (const auto& t : sub.terms) objective[t.variable] += t.coef * t.map.apply_adjoint(c);
    offset += (c * sub.constant).trace().real();
    c.setZero();
    eliminated[sub.variable] = true;
    subs.push_back(std::move(sub));
  }

  // Real data admit a real optimum: conjugation maps feasible points to
  // feasible points with the same objective, so averaging removes Im parts.
  bool real = options.field == Field::real;
  if (options.field == Field::automatic) {
    double imag = 0.0, scale = 1.0;
    auto scan = [&](const ComplexMatrix& m) {
      imag = std::max(imag, imaginary_scale(m));
      scale = std::max(scale, magnitude(m));
    };
    for (const auto& x : psd) scan(x.constant);
    for (const auto& s : subs) scan(s.constant);
    for (const auto& c : objective) scan(c);
    real = imag <= 1e-14 * scale;
  }

  // Coordinates of the free variables.
  std::vector<Index> offsets(nv, -1);
  std::vector<std::vector<Basis>> bases(nv);
  Index m = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    if (eliminated[v]) continue;
    offsets[v] = m;
    bases[v] = hermitian_basis(vars[v].dim, real);
    m += static_cast<Index>(bases[v].size());
  }

  BlockSdp problem;
  problem.objective = RealVector::Zero(m);
  for (std::size_t v = 0; v < nv; ++v) {
    if (eliminated[v]) continue;
    for (std::size_t k = 0; k < bases[v].size(); ++k) {
      double bk = 0.0;
      for (const auto& e : bases[v][k]) bk += (objective[v](e.col, e.row) * e.value).real();
      problem.objective(offsets[v] + static_cast<Index>(k)) = bk;
    }
  }
  for (const auto& x : psd) {
    if (x.terms.empty()) continue;
    problem.blocks.emplace_back(real ? RealMatrix(x.constant.real()) : embed_hermitian(x.constant));
    BlockConstraint& blk = problem.blocks.back();
    for (std::size_t v = 0; v < nv; ++v) {
      if (eliminated[v]) continue;
      std::vector<const Term*> on_v;
      for (const auto& t : x.terms) {
        if (t.variable == v) on_v.push_back(&t);
      }
      if (on_v.empty()) continue;
      for (std::size_t k = 0; k < bases[v].size(); ++k) {
        std::vector<HermitianEntry> image;
        for (const Term* t : on_v) {
          for (const auto& e : bases[v][k]) {
            for (const auto& target : t->map.targets(e.row, e.col)) {
              image.push_back({target.row, target.col, t->coef * target.coef * e.value});
            }
          }
        }
        const auto entries = block_image(std::move(image), x.dim, real);
        if (!entries.empty()) blk.add_image(offsets[v] + static_cast<Index>(k), entries);
      }
    }
  }

  BlockSolverOptions block_options;
  block_options.tolerance = options.tolerance;
  block_options.maxIterations = options.maxIterations;
  block_options.log = options.log;
  const BlockSolverResult r = solve_block_sdp(problem, block_options);

  ProgramSolution out;
  out.status = r.status;
  out.iterations = r.iterations;
  out.realField = real;
  out.coordinates = m;
  out.values.resize(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    if (eliminated[v]) continue;
    ComplexMatrix y = ComplexMatrix::Zero(vars[v].dim, vars[v].dim);
    for (std::size_t k = 0; k < bases[v].size(); ++k) {
      const double yk = r.y(offsets[v] + static_cast<Index>(k));
      for (const auto& e : bases[v][k]) y(e.row, e.col) += yk * e.value;
    }
    out.values[v] = std::move(y);
  }
  for (const auto& s : subs) {
    ComplexMatrix y = s.constant;
    for (const auto& t : s.terms) y += t.coef * t.map.apply(out.values[t.variable]);
    out.values[s.variable] = std::move(y);
  }

  // The dual objective is b^T y; add back what elimination moved into the offset.
  out.dualObjective = r.dualObjective + offset;
  out.primalObjective = r.primalObjective + offset;
  out.objective = program.objective_value(out.values);

  double worst = 0.0;
  for (const auto& e : program.psd()) {
    const ComplexMatrix val = e.expr.evaluate(out.values);
    worst = std::max(worst, -min_eigenvalue(val));
  }
  for (const auto& e : program.equalities()) {
    worst = std::max(worst, magnitude(e.expr.evaluate(out.values)));
  }
  out.maxResidual = worst;
  return out;
}

}  // namespace bqt::sdp
