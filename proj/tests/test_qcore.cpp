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

#include <cmath>
#include <numbers>

#include "bqt/qcore.hpp"
#include "bqt/resources.hpp"
#include "test_util.hpp"

namespace bqt {
namespace {

using testing::max_abs;

TEST(MaxEntangled, QubitEntries) {
  const ComplexMatrix phi = max_entangled_state(2).matrix();
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 0.5;
  EXPECT_EQ(phi, expected);
  EXPECT_NEAR(phi.trace().real(), 1.0, 1e-15);
  EXPECT_NEAR((phi * phi).trace().real(), 1.0, 1e-15);
}

TEST(MaxEntangled, QutritMarginalsAreMixed) {
  const BipartiteState phi = max_entangled_state(3);
  const ComplexMatrix mixed = ComplexMatrix::Identity(3, 3) / 3.0;
  EXPECT_LT(max_abs(partial_trace(phi, Subsystem::A).matrix() - mixed), 1e-15);
  EXPECT_LT(max_abs(partial_trace(phi, Subsystem::B).matrix() - mixed), 1e-15);
}

TEST(MaxEntangled, RejectsZeroDimension) { EXPECT_THROW(max_entangled_state(0), ValidationError); }

TEST(MaxEntangled, InvariantUnderConjugatePauliPairs) {
  for (Index d : {2, 3, 4}) {
    const ComplexMatrix phi = max_entangled_state(d).matrix();
    for (Index z = 0; z < d; ++z) {
      for (Index x = 0; x < d; ++x) {
        const ComplexMatrix w = heisenberg_weyl(d, z, x);
        const ComplexMatrix u = tensor(w, w.conjugate());
        const ComplexMatrix moved = u * phi * u.adjoint();
        EXPECT_NEAR((phi * moved).trace().real(), 1.0, 1e-12) << d << " " << z << " " << x;
      }
    }
  }
}

TEST(Tensor, Identities) {
  EXPECT_EQ(tensor(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)),
            ComplexMatrix::Identity(4, 4));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  EXPECT_EQ(tensor(testing::projector(2, 0), testing::projector(2, 1)), expected);
}

TEST(Tensor, ZTimesXEntries) {
  const ComplexMatrix zx = tensor(testing::pauli_z(), testing::pauli_x());
  EXPECT_EQ(zx(0, 1), Complex(1.0));
  EXPECT_EQ(zx(2, 3), Complex(-1.0));
  EXPECT_EQ(zx(0, 0), Complex(0.0));
}

TEST(PartialTrace, ProductStateRecoversFactors) {
  Rng rng(7);
  for (Index da = 1; da <= 4; ++da) {
    for (Index db = 1; db <= 4; ++db) {
      const DensityMatrix a = random_density_matrix(da, rng);
      const DensityMatrix b = random_density_matrix(db, rng);
      const BipartiteState s(da, db, tensor(a.matrix(), b.matrix()));
      EXPECT_LT(max_abs(partial_trace(s, Subsystem::B).matrix() - a.matrix()), 1e-14);
      EXPECT_LT(max_abs(partial_trace(s, Subsystem::A).matrix() - b.matrix()), 1e-14);
    }
  }
}

TEST(PartialTrace, MatchesLoopReference) {
  Rng rng(11);
  const DensityMatrix r = random_density_matrix(6, rng);
  const BipartiteState s(2, 3, r);
  EXPECT_LT(max_abs(partial_trace(s, Subsystem::B).matrix() - testing::loop_trace_b(r.matrix(), 2, 3)), 1e-15);
  EXPECT_LT(max_abs(partial_trace(s, Subsystem::A).matrix() - testing::loop_trace_a(r.matrix(), 2, 3)), 1e-15);
}

TEST(PartialTrace, IsotropicMarginal) {
  const BipartiteState s = isotropic_state({0.7, 3});
  EXPECT_LT(max_abs(partial_trace(s, Subsystem::A).matrix() - ComplexMatrix::Identity(3, 3) / 3.0), 1e-12);
}

TEST(PartialTranspose, BellStateGivesHalfSwap) {
  const ComplexMatrix pt = partial_transpose(max_entangled_state(2), Subsystem::B);
  EXPECT_LT(max_abs(pt - swap_operator(2, 2) / 2.0), 1e-15);
  const RealVector ev = testing::eigenvalues(pt);
  EXPECT_NEAR(ev(0), -0.5, 1e-12);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(ev(k), 0.5, 1e-12);
}

TEST(PartialTranspose, ProductStaysPositive) {
  Rng rng(3);
  const DensityMatrix a = random_density_matrix(2, rng);
  const DensityMatrix b = random_density_matrix(3, rng);
  const BipartiteState s(2, 3, tensor(a.matrix(), b.matrix()));
  const ComplexMatrix pt = partial_transpose(s, Subsystem::B);
  EXPECT_LT(max_abs(pt - tensor(a.matrix(), b.matrix().transpose())), 1e-15);
  EXPECT_GT(min_eigenvalue(pt), -1e-12);
}

TEST(PartialTranspose, InvolutionTraceAndHermiticity) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix r = random_density_matrix(6, rng);
    const BipartiteState s(3, 2, r);
    for (Subsystem which : {Subsystem::A, Subsystem::B}) {
      const ComplexMatrix pt = partial_transpose(s, which);
      EXPECT_TRUE(is_hermitian(pt, 1e-14));
      EXPECT_NEAR(pt.trace().real(), 1.0, 1e-14);
    }
    const Index dims[] = {3, 2};
    const int second[] = {1};
    const ComplexMatrix once = partial_transpose(r.matrix(), dims, second);
    EXPECT_EQ(partial_transpose(once, dims, second), r.matrix());
    EXPECT_LT(max_abs(once - testing::loop_transpose_b(r.matrix(), 3, 2)), 1e-16);
  }
}

TEST(TraceNorm, Examples) {
  Rng rng(1);
  EXPECT_NEAR(trace_norm(random_density_matrix(5, rng).matrix()), 1.0, 1e-12);
  EXPECT_NEAR(trace_norm(testing::pauli_z()), 2.0, 1e-15);
  EXPECT_NEAR(trace_norm(partial_transpose(max_entangled_state(2), Subsystem::B)), 2.0, 1e-12);
}

TEST(TraceNorm, NormAxioms) {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix x = random_hermitian(4, rng);
    const ComplexMatrix y = random_hermitian(4, rng);
    EXPECT_NEAR(trace_norm(-2.5 * x), 2.5 * trace_norm(x), 1e-12);
    EXPECT_LE(trace_norm(x + y), trace_norm(x) + trace_norm(y) + 1e-12);
  }
}

TEST(Fidelity, Examples) {
  Rng rng(2);
  const DensityMatrix r = random_density_matrix(3, rng);
  EXPECT_NEAR(fidelity(r, r), 1.0, 1e-9);
  ComplexVector psi = ComplexVector::Zero(3);
  psi << Complex(0.6, 0.0), Complex(0.0, 0.8), 0.0;
  const DensityMatrix pure = DensityMatrix::pure(psi);
  const double expected = (psi.adjoint() * r.matrix() * psi)(0).real();
  EXPECT_NEAR(fidelity(pure, r), expected, 1e-10);
  ComplexVector zero = ComplexVector::Zero(2);
  zero(0) = 1.0;
  EXPECT_NEAR(fidelity(DensityMatrix::pure(zero), DensityMatrix::maximally_mixed(2)), 0.5, 1e-12);
}

TEST(Fidelity, SymmetricOnRandomPairs) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix a = random_density_matrix(4, rng);
    const DensityMatrix b = random_density_matrix(4, rng);
    EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-10);
  }
}

TEST(Fidelity, OrthogonalSupportsGiveZero) {
  const DensityMatrix a(testing::projector(3, 0));
  const DensityMatrix b(testing::projector(3, 2));
  EXPECT_NEAR(fidelity(a, b), 0.0, 1e-12);
  EXPECT_THROW(fidelity(a, DensityMatrix::maximally_mixed(2)), ValidationError);
}

TEST(HeisenbergWeyl, QubitSpecialization) {
  EXPECT_EQ(heisenberg_weyl(2, 0, 0), ComplexMatrix::Identity(2, 2));
  EXPECT_EQ(heisenberg_weyl(2, 1, 0), testing::pauli_z());
  EXPECT_EQ(heisenberg_weyl(2, 0, 1), testing::pauli_x());
}

TEST(HeisenbergWeyl, DefinitionAsShiftAndClock) {
  for (Index d : {3, 5}) {
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(d));
    ComplexMatrix clock = ComplexMatrix::Zero(d, d), shift = ComplexMatrix::Zero(d, d);
    for (Index k = 0; k < d; ++k) {
      clock(k, k) = std::pow(omega, static_cast<double>(k));
      shift((k + 1) % d, k) = 1.0;
    }
    for (Index z = 0; z < d; ++z) {
      for (Index x = 0; x < d; ++x) {
        ComplexMatrix ref = ComplexMatrix::Identity(d, d);
        for (Index i = 0; i < z; ++i) ref = clock * ref;
        ComplexMatrix xs = ComplexMatrix::Identity(d, d);
        for (Index i = 0; i < x; ++i) xs = shift * xs;
        EXPECT_LT(max_abs(heisenberg_weyl(d, z, x) - ref * xs), 1e-12);
      }
    }
  }
}

TEST(HeisenbergWeyl, UnitaryAndOrthogonal) {
  const Index d = 3;
  for (Index z = 0; z < d; ++z) {
    for (Index x = 0; x < d; ++x) {
      const ComplexMatrix w = heisenberg_weyl(d, z, x);
      EXPECT_LT(max_abs(w.adjoint() * w - ComplexMatrix::Identity(d, d)), 1e-14);
      for (Index z2 = 0; z2 < d; ++z2) {
        for (Index x2 = 0; x2 < d; ++x2) {
          const Complex ip = (w.adjoint() * heisenberg_weyl(d, z2, x2)).trace();
          const double expected = (z == z2 && x == x2) ? 3.0 : 0.0;
          EXPECT_NEAR(std::abs(ip - expected), 0.0, 1e-12);
        }
      }
    }
  }
  EXPECT_THROW(heisenberg_weyl(3, 3, 0), ValidationError);
  EXPECT_THROW(heisenberg_weyl(3, 0, -1), ValidationError);
}

TEST(DensityMatrix, Validation) {
  EXPECT_THROW(DensityMatrix(ComplexMatrix::Identity(2, 2)), ValidationError);  // trace 2
  ComplexMatrix nonherm = ComplexMatrix::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{nonherm}, ValidationError);
  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{negative}, ValidationError);
  EXPECT_THROW(BipartiteState(2, 3, DensityMatrix::maximally_mixed(4)), ValidationError);
}

TEST(PermuteSubsystems, SwapOfTwoFactors) {
  Rng rng(6);
  const ComplexMatrix a = random_density_matrix(2, rng).matrix();
  const ComplexMatrix b = random_density_matrix(3, rng).matrix();
  const Index dims[] = {2, 3};
  const int perm[] = {1, 0};
  EXPECT_LT(max_abs(permute_subsystems(tensor(a, b), dims, perm) - tensor(b, a)), 1e-15);
  const ComplexMatrix s = swap_operator(2, 3);
  EXPECT_LT(max_abs(s * tensor(a, b) * s.adjoint() - tensor(b, a)), 1e-15);
}

TEST(Random, HaarUnitaryIsUnitaryAndSeeded) {
  Rng a(42), b(42);
  const ComplexMatrix u = haar_unitary(4, a);
  EXPECT_LT(max_abs(u.adjoint() * u - ComplexMatrix::Identity(4, 4)), 1e-12);
  EXPECT_EQ(u, haar_unitary(4, b));
}

}  // namespace
}  // namespace bqt
