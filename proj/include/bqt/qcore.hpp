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

#include <complex>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace bqt {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Raised when caller-supplied data violates a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Construction tolerances shared by every module.
namespace tol {
inline constexpr double kHermitian = 1e-9;
inline constexpr double kTrace = 1e-9;
/// Eigenvalues in [-kPsd, 0) are treated as zero.
inline constexpr double kPsd = 1e-8;
}  // namespace tol

enum class Subsystem { A, B };

/**
 * Hermitian, unit-trace, positive semidefinite matrix.
 *
 * The constructor validates against the tolerances in `bqt::tol` and stores
 * the exact Hermitian part of its input.
 */
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m);

  /// Rank-one state |psi><psi|; the ket must be normalized.
  static DensityMatrix pure(const ComplexVector& ket);
  static DensityMatrix maximally_mixed(Index dim);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

/// Density matrix on A (x) B with basis index i * dimB + j for |i>_A |j>_B.
class BipartiteState {
 public:
  BipartiteState(Index dimA, Index dimB, DensityMatrix state);
  BipartiteState(Index dimA, Index dimB, const ComplexMatrix& m)
      : BipartiteState(dimA, dimB, DensityMatrix(m)) {}

  Index dimA() const { return dimA_; }
  Index dimB() const { return dimB_; }
  Index dim() const { return dimA_ * dimB_; }
  const DensityMatrix& state() const { return state_; }
  const ComplexMatrix& matrix() const { return state_.matrix(); }

 private:
  Index dimA_;
  Index dimB_;
  DensityMatrix state_;
};

/// Phi = (1/d) sum_{i,j} |ii><jj|.
BipartiteState max_entangled_state(Index d);

/// Kronecker product, a (x) b, with a's index most significant.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced state after tracing out `traced`.
DensityMatrix partial_trace(const BipartiteState& s, Subsystem traced);

ComplexMatrix partial_transpose(const BipartiteState& s, Subsystem which);

double trace_norm(const ComplexMatrix& x);

/// F(omega, tau) = || sqrt(omega) sqrt(tau) ||_1^2.
double fidelity(const DensityMatrix& omega, const DensityMatrix& tau);

/// W^{z,x} = Z^z X^x with Z|k> = e^{2 pi i k / d}|k>, X|k> = |k+1 mod d>.
ComplexMatrix heisenberg_weyl(Index d, Index z, Index x);

/// Unitary taking |i>_A |j>_B to |j>_B |i>_A (dimensions dimA*dimB square).
ComplexMatrix swap_operator(Index dimA, Index dimB);

// Multi-subsystem helpers. `dims` lists local dimensions with the first
// subsystem most significant; subsystem lists are zero-based positions.

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const Index> dims,
                            std::span<const int> traced);
ComplexMatrix partial_transpose(const ComplexMatrix& m,
                                std::span<const Index> dims,
                                std::span<const int> transposed);
/// Reorders tensor factors: output factor k is input factor perm[k].
ComplexMatrix permute_subsystems(const ComplexMatrix& m,
                                 std::span<const Index> dims,
                                 std::span<const int> perm);

// Spectral helpers.

bool is_hermitian(const ComplexMatrix& m, double tolerance);
double min_eigenvalue(const ComplexMatrix& hermitian);
/// Square root of a PSD matrix; negative eigenvalues are clipped to zero.
ComplexMatrix sqrt_psd(const ComplexMatrix& hermitian);
/// Projection onto the PSD cone.
ComplexMatrix clip_to_psd(const ComplexMatrix& hermitian);

// Seeded random sampling.

using Rng = std::mt19937_64;

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
ComplexMatrix haar_unitary(Index d, Rng& rng);
/// Ginibre-induced random density matrix of full rank.
DensityMatrix random_density_matrix(Index d, Rng& rng);
ComplexMatrix random_hermitian(Index d, Rng& rng);

}  // namespace bqt
