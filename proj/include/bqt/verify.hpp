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

#include <array>

#include "bqt/channels.hpp"
#include "bqt/sdp.hpp"

namespace bqt {

/**
 * Effective AB -> AB channel obtained by measuring the resource with
 * {K, L, N} and acting on the outcome:
 *   K: exchange the inputs,
 *   L: garble one input (each with probability 1/2), then exchange,
 *   N: garble both inputs, then exchange.
 */
struct ReconstructedChannel {
  PovmTriple povm;
  Index d = 2;
  BipartiteState resource;
  ChoiMatrix realized;
  double pK = 0.0;
  double pL = 0.0;
  double pN = 0.0;
};

/**
 * Channel applied on each outcome, as a d^2 -> d^2 Choi matrix with wire order
 * (R_A, R_B, A', B'). Garbling uses gen_pauli_channel(d) on the input factor
 * and the swap unitary is applied last, so Alice's input ends on B'.
 */
std::array<ChoiMatrix, 3> simulation_branches(Index d);

ReconstructedChannel build_reconstructed_channel(const PovmTriple& povm, const BipartiteState& rho, Index d);

/// Half the diamond distance between the ideal swap and `ch.realized`.
DiamondResult achieved_error_result(const ReconstructedChannel& ch, const sdp::SolveOptions& options = {});
double achieved_error(const ReconstructedChannel& ch, const sdp::SolveOptions& options = {});

/**
 * Choi matrix of the map (A Ahat)(B Bhat) -> A' B' before the resource is
 * consumed: sum over outcomes of branch Choi (x) M^T. Returned dims are
 * {d dimA, d dimB, d, d}.
 */
ChoiMatrix full_choi(const ReconstructedChannel& ch);
BipartiteDims full_dims(const ReconstructedChannel& ch);

struct CpptpReport {
  bool ok = false;
  double minEigenvalue = 0.0;  // of the Choi matrix transposed on Bob's input and output
};

/// Positivity of the Choi matrix after transposing Bob's input and output factors.
CpptpReport check_cpptp(const ChoiMatrix& ch, const BipartiteDims& dims,
                        double tolerance = tol::kPsd);

}  // namespace bqt
