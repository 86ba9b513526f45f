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

#include "bqt/qcore.hpp"

namespace bqt {

struct IsotropicParams {
  double fidelity = 1.0;  // overlap with the maximally entangled state
  Index dim = 2;          // local dimension of each party

  /// Throws ValidationError unless fidelity in [0, 1] and dim >= 2.
  void validate() const;
};

struct GadcParams {
  double gamma = 0.0;  // damping
  double noise = 0.0;  // thermal noise N

  void validate() const;
};

/// F Phi + (1 - F) (I - Phi) / (d^2 - 1) on d x d.
BipartiteState isotropic_state(const IsotropicParams& p);

/// Re Tr[Phi rho] for an equal-dimension bipartite state.
double max_entangled_overlap(const BipartiteState& s);

/**
 * Haar average of (U (x) conj(U)) s (..)^dag.
 *
 * Evaluated in closed form: the average is the isotropic state with the same
 * overlap Tr[Phi s]. Requires dimA == dimB.
 */
BipartiteState twirl_to_isotropic(const BipartiteState& s);

/**
 * Two Bell pairs with every qubit sent through gadc(gamma, N).
 *
 * The four qubits start in the order (A1 B1 A2 B2) and are regrouped to
 * (A1 A2)(B1 B2), giving a state on 4 x 4 whose Alice index is 2 a1 + a2.
 */
BipartiteState gadc_resource_state(const GadcParams& p);

/// Closed form [1 + (g/2)(g - 2[1 + g N (1 - N)])]^2.
double gadc_entanglement_fidelity(const GadcParams& p);

}  // namespace bqt
