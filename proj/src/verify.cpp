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

#include "bqt/verify.hpp"

#include <cmath>
#include <sstream>

namespace bqt {

namespace {

constexpr double kProbabilityTolerance = 1e-7;
constexpr double kChannelTolerance = 1e-7;

}  // namespace

std::array<ChoiMatrix, 3> simulation_branches(Index d) {
  const KrausChannel exchange = unitary_channel(swap_operator(d, d));
  const KrausChannel id = identity_channel(d);
  const KrausChannel garble = gen_pauli_channel(d);
  const ChoiMatrix keep = choi_of(exchange);
  const ChoiMatrix one_a = choi_of(compose(exchange, tensor(garble, id)));
  const ChoiMatrix one_b = choi_of(compose(exchange, tensor(id, garble)));
  const std::pair<double, ChoiMatrix> halves[] = {{0.5, one_a}, {0.5, one_b}};
  return {keep, mix(halves), choi_of(compose(exchange, tensor(garble, garble)))};
}

ReconstructedChannel build_reconstructed_channel(const PovmTriple& povm, const BipartiteState& rho, Index d) {
  if (d < 2) throw ValidationError("swap dimension d must be at least 2");
  const Index n = rho.dim();
  for (const auto* m : {&povm.k, &povm.l, &povm.n}) {
    if (m->rows() != n || m->cols() != n) {
      throw ValidationError("POVM element size does not match the resource state");
    }
    if (!is_hermitian(*m, tol::kHermitian)) throw ValidationError("POVM element is not Hermitian");
    if (min_eigenvalue(*m) < -tol::kPsd) throw ValidationError("POVM element is not PSD");
  }
  const ComplexMatrix& r = rho.matrix();
  double p[3] = {(povm.k * r).trace().real(), (povm.l * r).trace().real(),
                 (povm.n * r).trace().real()};
  const double total = p[0] + p[1] + p[2];
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    std::ostringstream msg;
    msg << "outcome probabilities sum to " << total;
    throw ValidationError(msg.str());
  }
  for (double& x : p) x = std::max(x, 0.0) / total;

  const auto branches = simulation_branches(d);
  ComplexMatrix m = ComplexMatrix::Zero(d * d * d * d, d * d * d * d);
  for (int o = 0; o < 3; ++o) m += p[o] * branches[static_cast<std::size_t>(o)].matrix();
  return ReconstructedChannel{povm, d, rho, ChoiMatrix(d * d, d * d, m, kChannelTolerance),
                        p[0], p[1], p[2]};
}

DiamondResult achieved_error_result(const ReconstructedChannel& ch, const sdp::SolveOptions& options) {
  const ChoiMatrix ideal = choi_of(unitary_channel(swap_operator(ch.d, ch.d)));
  return diamond_distance_result(ideal, ch.realized, options);
}

double achieved_error(const ReconstructedChannel& ch, const sdp::SolveOptions& options) {
  const ChoiMatrix ideal = choi_of(unitary_channel(swap_operator(ch.d, ch.d)));
  return diamond_distance(ideal, ch.realized, options);
}

BipartiteDims full_dims(const ReconstructedChannel& ch) {
  return {ch.d * ch.resource.dimA(), ch.d * ch.resource.dimB(), ch.d, ch.d};
}

ChoiMatrix full_choi(const ReconstructedChannel& ch) {
  const Index d = ch.d;
  const Index ra = ch.resource.dimA();
  const Index rb = ch.resource.dimB();
  const auto branches = simulation_branches(d);
  const ComplexMatrix* elements[] = {&ch.povm.k, &ch.povm.l, &ch.povm.n};
  const Index total = d * d * d * d * ra * rb;
  ComplexMatrix joint = ComplexMatrix::Zero(total, total);
  for (std::size_t o = 0; o < 3; ++o) {
    joint += tensor(branches[o].matrix(), elements[o]->transpose());
  }
  // (R_A, R_B, A', B', R_Ahat, R_Bhat) -> (R_A R_Ahat)(R_B R_Bhat)(A')(B')
  const Index dims[] = {d, d, d, d, ra, rb};
  const int perm[] = {0, 4, 1, 5, 2, 3};
  return ChoiMatrix(d * d * ra * rb, d * d, permute_subsystems(joint, dims, perm),
                    kChannelTolerance);
}

CpptpReport check_cpptp(const ChoiMatrix& ch, const BipartiteDims& dims, double tolerance) {
  if (dims.in() != ch.dimIn() || dims.out() != ch.dimOut()) {
    throw ValidationError("check_cpptp: declared dimensions do not match the channel");
  }
  const Index factors[] = {dims.aIn, dims.bIn, dims.aOut, dims.bOut};
  const int bob[] = {1, 3};
  CpptpReport r;
  r.minEigenvalue = min_eigenvalue(partial_transpose(ch.matrix(), factors, bob));
  r.ok = r.minEigenvalue >= -tolerance;
  return r;
}

}  // namespace bqt
