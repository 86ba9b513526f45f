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

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "bqt/qcore.hpp"

namespace bqt {

/// Trace-preserving channel given by Kraus operators (each dimOut x dimIn).
class KrausChannel {
 public:
  /// Validates sum_i A_i^dag A_i = I within `tpTolerance`.
  KrausChannel(Index dimIn, Index dimOut, std::vector<ComplexMatrix> kraus,
               double tpTolerance = 1e-9);

  Index dimIn() const { return dimIn_; }
  Index dimOut() const { return dimOut_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  /// sum_i A_i X A_i^dag for an arbitrary operator X.
  ComplexMatrix apply_to(const ComplexMatrix& x) const;

 private:
  Index dimIn_;
  Index dimOut_;
  std::vector<ComplexMatrix> kraus_;
};

/**
 * Choi matrix sum_{ij} |i><j| (x) N(|i><j|), reference system first.
 *
 * Normalized to trace dimIn so that trace preservation reads
 * Tr_out[choi] = I_dimIn.
 */
class ChoiMatrix {
 public:
  ChoiMatrix(Index dimIn, Index dimOut, const ComplexMatrix& matrix,
             double tolerance = 1e-9);

  Index dimIn() const { return dimIn_; }
  Index dimOut() const { return dimOut_; }
  const ComplexMatrix& matrix() const { return m_; }

  ComplexMatrix apply_to(const ComplexMatrix& x) const;

 private:
  Index dimIn_;
  Index dimOut_;
  ComplexMatrix m_;
};

/// Factor dimensions of a channel AB -> A'B'.
struct BipartiteDims {
  Index aIn = 1;
  Index bIn = 1;
  Index aOut = 1;
  Index bOut = 1;

  Index in() const { return aIn * bIn; }
  Index out() const { return aOut * bOut; }
};

/// Channel on a bipartite system; factor dimensions are stored, never inferred.
struct BipartiteChannel {
  BipartiteDims dims;
  std::variant<KrausChannel, ChoiMatrix> representation;

  ChoiMatrix choi() const;
};

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);
DensityMatrix apply(const ChoiMatrix& ch, const DensityMatrix& rho);
DensityMatrix apply(const BipartiteChannel& ch, const DensityMatrix& rho);

ChoiMatrix choi_of(const KrausChannel& ch);
/// Kraus form from the Choi eigendecomposition; eigenvalues below tol::kPsd
/// are dropped, and eigenvalues below -tol::kPsd raise ValidationError.
KrausChannel kraus_of(const ChoiMatrix& choi);

KrausChannel identity_channel(Index d);
KrausChannel unitary_channel(const ComplexMatrix& u);
/// rho -> Tr[rho] I / d.
KrausChannel completely_depolarizing_channel(Index d);

/// D(s) = 1/(d^2 - 1) sum_{(z,x) != (0,0)} W^{z,x} s W^{z,x}^dag.
KrausChannel gen_pauli_channel(Index d);

/// Generalized amplitude damping with damping `gamma` and noise `n`.
KrausChannel gadc(double gamma, double n);

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);
/// second o first.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

/// Convex combination of channels with identical dimensions.
ChoiMatrix mix(std::span<const std::pair<double, ChoiMatrix>> terms);

/// Conjugation by the d^2 x d^2 swap unitary.
BipartiteChannel swap_channel(Index d);

/**
 * Applies `ch` to factor `which` of a multipartite operator with local
 * dimensions `dims`; the factor's dimension becomes ch.dimOut().
 */
ComplexMatrix apply_local(const KrausChannel& ch, const ComplexMatrix& x,
                          std::span<const Index> dims, int which);

/// || (V_A (x) U_B) S(rho) (..)^dag - S((U_A (x) V_B) rho (..)^dag) ||_max.
double swap_symmetry_defect(const ComplexMatrix& u, const ComplexMatrix& v,
                            const DensityMatrix& rho);

/// Checks the swap covariance relation on `trials` Haar-random (U, V) pairs
/// and random inputs, to 1e-9.
bool verify_swap_symmetry(Index d, int trials, std::uint64_t seed = 20201015);

}  // namespace bqt
