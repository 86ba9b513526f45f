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
#include <string>
#include <vector>

#include "bqt/qcore.hpp"
#include "bqt/sdp/block_solver.hpp"
#include "bqt/sdp/linear_map.hpp"

namespace bqt::sdp {

struct MatrixVariable {
  std::string name;
  Index dim;
};

/// coef * map(Y_variable)
struct Term {
  std::size_t variable;
  double coef;
  EntryMap map;
};

/// constant + sum of terms, a Hermitian dim x dim matrix.
struct AffineExpr {
  Index dim = 0;
  std::vector<Term> terms;
  ComplexMatrix constant;

  explicit AffineExpr(Index d) : dim(d), constant(ComplexMatrix::Zero(d, d)) {}

  AffineExpr& add(std::size_t variable, double coef, EntryMap map) {
    terms.push_back({variable, coef, std::move(map)});
    return *this;
  }
  AffineExpr& plus(const ComplexMatrix& c) {
    constant += c;
    return *this;
  }

  ComplexMatrix evaluate(const std::vector<ComplexMatrix>& values) const;
};

struct NamedExpr {
  std::string name;
  AffineExpr expr;
};

/**
 * Solver-independent semidefinite program over Hermitian matrix variables:
 *
 *   maximize  sum_v Re Tr[C_v Y_v] + offset
 *   s.t.      psd_k(Y) >= 0,  eq_k(Y) = 0.
 *
 * Variables are free Hermitian matrices; PSD-ness of a variable is stated as
 * an explicit constraint. Each equality must contain a term map.identity()
 * on some variable; the last such term is used to eliminate that variable.
 */
class SdpProgram {
 public:
  std::size_t add_variable(std::string name, Index dim);
  void add_psd(std::string name, AffineExpr expr);
  void add_equality(std::string name, AffineExpr expr);
  void set_objective(std::size_t variable, ComplexMatrix c);
  void set_objective_offset(double offset) { offset_ = offset; }

  const std::vector<MatrixVariable>& variables() const { return variables_; }
  const std::vector<NamedExpr>& psd() const { return psd_; }
  const std::vector<NamedExpr>& equalities() const { return equalities_; }
  const std::vector<ComplexMatrix>& objective() const { return objective_; }
  double objective_offset() const { return offset_; }

  /// Dimension consistency of every term, constant and objective.
  void validate() const;

  double objective_value(const std::vector<ComplexMatrix>& values) const;

 private:
  std::vector<MatrixVariable> variables_;
  std::vector<NamedExpr> psd_;
  std::vector<NamedExpr> equalities_;
  std::vector<ComplexMatrix> objective_;
  double offset_ = 0.0;
};

enum class Field { automatic, real, complex };

struct SolveOptions {
  double tolerance = 1e-8;
  int maxIterations = 200;
  /// `automatic` restricts to real symmetric matrices when all data are real.
  Field field = Field::automatic;
  std::ostream* log = nullptr;
};

struct ProgramSolution {
  SolverStatus status = SolverStatus::numericalFailure;
  double objective = 0.0;
  std::vector<ComplexMatrix> values;  // one per variable, eliminated ones included
  /// Worst violation over all constraints, recomputed from `values`.
  double maxResidual = 0.0;
  double primalObjective = 0.0;
  double dualObjective = 0.0;
  int iterations = 0;
  bool realField = false;
  Index coordinates = 0;
};

ProgramSolution solve(const SdpProgram& program, const SolveOptions& options = {});

/// H -> [[Re H, -Im H], [Im H, Re H]].
RealMatrix embed_hermitian(const ComplexMatrix& h);
/// Inverse of embed_hermitian on its image.
ComplexMatrix unembed_hermitian(const RealMatrix& e);

}  // namespace bqt::sdp
