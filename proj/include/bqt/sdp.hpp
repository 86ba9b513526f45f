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

#include <stdexcept>

#include "bqt/channels.hpp"
#include "bqt/qcore.hpp"
#include "bqt/sdp/program.hpp"

namespace bqt {

namespace sdp {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerance from BQT_SOLVER_TOL when set and positive, else `fallback`.
double solver_tolerance_from_env(double fallback = 1e-8);

}  // namespace sdp

/// Elements of a three-outcome measurement on the resource system.
struct PovmTriple {
  ComplexMatrix k;
  ComplexMatrix l;
  ComplexMatrix n;
};

struct SdpSolution {
  double value = 1.0;         // raw 1 - Tr[rho K]
  double clippedValue = 1.0;  // value clamped to [0, 1]
  PovmTriple witness;         // Hermitian, spectra clipped at zero
  sdp::SolverStatus status = sdp::SolverStatus::numericalFailure;
  double maxResidual = 0.0;   // constraint violation of the unclipped optimum
  double witnessMinEigenvalue = 0.0;  // most negative eigenvalue removed by clipping
  int iterations = 0;
  bool realField = false;
};

struct PptSimulationProgram {
  sdp::SdpProgram program;
  std::size_t k = 0;
  std::size_t l = 0;
  std::size_t n = 0;
  Index dimA = 0;  // resource factor held by Alice
  Index dimB = 0;
  Index d = 0;     // dimension of each swapped system
};

inline constexpr Index kMaxJointDimension = 400;

/**
 * Maximize Tr[rho K] over K, L, N >= 0 with K + L + N = I and
 *   T(K + L/(d+1) + N/(d+1)^2) >= 0,
 *   T(L + N)/(d^2-1) - T(K) >= 0,
 *   T(K + N/(d-1)^2) - T(L)/(d-1) >= 0,
 * where T transposes the second resource factor.
 */
PptSimulationProgram build_ppt_simulation_program(const BipartiteState& rho, Index d);

SdpSolution solve(const PptSimulationProgram& p, const sdp::SolveOptions& options = {});

SdpSolution ppt_simulation_error(const BipartiteState& rho, Index d,
                                 const sdp::SolveOptions& options = {});

/**
 * Largest violation of the program's constraints by `povm`, evaluated with
 * dense partial transposes. Zero for an exactly feasible triple.
 */
double ppt_constraint_residual(const PovmTriple& povm, Index dimA, Index dimB, Index d);

struct DiamondResult {
  double value = 0.0;
  sdp::SolverStatus status = sdp::SolverStatus::numericalFailure;
  double maxResidual = 0.0;
  int iterations = 0;
};

/// Half the diamond norm of a - b.
DiamondResult diamond_distance_result(const ChoiMatrix& a, const ChoiMatrix& b,
                                      const sdp::SolveOptions& options = {});

/// As above; throws sdp::SolverError unless the solve converged.
double diamond_distance(const ChoiMatrix& a, const ChoiMatrix& b,
                        const sdp::SolveOptions& options = {});

}  // namespace bqt
