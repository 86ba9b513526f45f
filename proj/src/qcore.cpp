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

#include "bqt/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace bqt {

namespace {

Index product(std::span<const Index> dims) {
  Index p = 1;
  for (Index d : dims) p *= d;
  return p;
}

void check_dims(const ComplexMatrix& m, std::span<const Index> dims) {
  for (Index d : dims) {
    if (d < 1) throw ValidationError("subsystem dimension must be positive");
  }
  if (m.rows() != m.cols() || m.rows() != product(dims)) {
    throw ValidationError("matrix size does not match subsystem dimensions");
  }
}

void check_subsystems(std::span<const int> which, std::size_t count) {
  for (int s : which) {
    if (s < 0 || static_cast<std::size_t>(s) >= count) {
      throw ValidationError("subsystem position out of range");
    }
  }
}

// Digits of `index` in the mixed radix `dims`, most significant first.
void split_index(Index index, std::span<const Index> dims,
                 std::vector<Index>& digits) {
  digits.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

Index join_index(std::span<const Index> digits, std::span<const Index> dims) {
  Index index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(const ComplexMatrix& h) {
  ComplexMatrix sym = (h + h.adjoint()) / 2.0;
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(sym);
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw ValidationError("density matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw ValidationError("density matrix has non-finite entries");
  if (!is_hermitian(m, tol::kHermitian)) {
    throw ValidationError("density matrix is not Hermitian");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr << ", expected 1";
    throw ValidationError(msg.str());
  }
  m_ = (m + m.adjoint()) / 2.0;
  const double lmin = min_eigenvalue(m_);
  if (lmin < -tol::kPsd) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << lmin;
    throw ValidationError(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& ket) {
  if (std::abs(ket.squaredNorm() - 1.0) > tol::kTrace) {
    throw ValidationError("pure state ket is not normalized");
  }
  return DensityMatrix(ket * ket.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim < 1) throw ValidationError("dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

BipartiteState::BipartiteState(Index dimA, Index dimB, DensityMatrix state)
    : dimA_(dimA), dimB_(dimB), state_(std::move(state)) {
  if (dimA < 1 || dimB < 1) throw ValidationError("subsystem dimension must be positive");
  if (state_.dim() != dimA * dimB) {
    throw ValidationError("state dimension does not equal dimA * dimB");
  }
}

BipartiteState max_entangled_state(Index d) {
  if (d < 1) throw ValidationError("max_entangled_state: dimension must be positive");
  ComplexMatrix phi = ComplexMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) phi(i * d + i, j * d + j) = 1.0 / static_cast<double>(d);
  }
  return BipartiteState(d, d, phi);
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix partial_trace(const BipartiteState& s, Subsystem traced) {
  const Index dims[] = {s.dimA(), s.dimB()};
  const int which[] = {traced == Subsystem::A ? 0 : 1};
  return DensityMatrix(partial_trace(s.matrix(), dims, which));
}

ComplexMatrix partial_transpose(const BipartiteState& s, Subsystem which) {
  const Index dims[] = {s.dimA(), s.dimB()};
  const int sub[] = {which == Subsystem::A ? 0 : 1};
  return partial_transpose(s.matrix(), dims, sub);
}

double trace_norm(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw ValidationError("trace_norm: matrix must be square");
  Eigen::BDCSVD<ComplexMatrix> svd(x);
  return svd.singularValues().sum();
}

double fidelity(const DensityMatrix& omega, const DensityMatrix& tau) {
  if (omega.dim() != tau.dim()) throw ValidationError("fidelity: dimension mismatch");
  const ComplexMatrix product = sqrt_psd(omega.matrix()) * sqrt_psd(tau.matrix());
  const double root = trace_norm(product);
  return std::clamp(root * root, 0.0, 1.0);
}

ComplexMatrix heisenberg_weyl(Index d, Index z, Index x) {
  if (d < 1) throw ValidationError("heisenberg_weyl: dimension must be positive");
  if (z < 0 || z >= d || x < 0 || x >= d) {
    throw ValidationError("heisenberg_weyl: index out of range");
  }
  // Z^z X^x |k> = omega^{z (k + x)} |k + x>
  ComplexMatrix w = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    const Index target = (k + x) % d;
    const Index phase = (z * target) % d;
    if ((4 * phase) % d == 0) {
      // multiples of pi/2 exactly
      const Complex quarter[] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
      w(target, k) = quarter[(4 * phase) / d];
      continue;
    }
    w(target, k) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) /
                                       static_cast<double>(d));
  }
  return w;
}

ComplexMatrix swap_operator(Index dimA, Index dimB) {
  const Index n = dimA * dimB;
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < dimA; ++i) {
    for (Index j = 0; j < dimB; ++j) s(j * dimA + i, i * dimB + j) = 1.0;
  }
  return s;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const Index> dims,
                            std::span<const int> traced) {
  check_dims(m, dims);
  check_subsystems(traced, dims.size());
  std::vector<bool> is_traced(dims.size(), false);
  for (int t : traced) is_traced[static_cast<std::size_t>(t)] = true;
  std::vector<Index> kept_dims;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!is_traced[k]) kept_dims.push_back(dims[k]);
  }
  const Index n = m.rows();
  std::vector<Index> kept_index(static_cast<std::size_t>(n));
  std::vector<Index> traced_index(static_cast<std::size_t>(n));
  std::vector<Index> digits, kept, gone, gone_dims;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (is_traced[k]) gone_dims.push_back(dims[k]);
  }
  for (Index p = 0; p < n; ++p) {
    split_index(p, dims, digits);
    kept.clear();
    gone.clear();
    for (std::size_t k = 0; k < dims.size(); ++k) {
      (is_traced[k] ? gone : kept).push_back(digits[k]);
    }
    kept_index[static_cast<std::size_t>(p)] = join_index(kept, kept_dims);
    traced_index[static_cast<std::size_t>(p)] = join_index(gone, gone_dims);
  }
  const Index out_dim = product(kept_dims);
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (Index q = 0; q < n; ++q) {
    for (Index p = 0; p < n; ++p) {
      if (traced_index[static_cast<std::size_t>(p)] == traced_index[static_cast<std::size_t>(q)]) {
        out(kept_index[static_cast<std::size_t>(p)], kept_index[static_cast<std::size_t>(q)]) +=
            m(p, q);
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::span<const Index> dims,
                                std::span<const int> transposed) {
  check_dims(m, dims);
  check_subsystems(transposed, dims.size());
  const Index n = m.rows();
  ComplexMatrix out(n, n);
  std::vector<Index> dp, dq;
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      split_index(p, dims, dp);
      split_index(q, dims, dq);
      for (int s : transposed) {
        std::swap(dp[static_cast<std::size_t>(s)], dq[static_cast<std::size_t>(s)]);
      }
      out(join_index(dp, dims), join_index(dq, dims)) = m(p, q);
    }
  }
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const Index> dims,
                                 std::span<const int> perm) {
  check_dims(m, dims);
  if (perm.size() != dims.size()) throw ValidationError("permutation size mismatch");
  std::vector<bool> seen(dims.size(), false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= dims.size() || seen[static_cast<std::size_t>(p)]) {
      throw ValidationError("invalid subsystem permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<Index> out_dims(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) out_dims[k] = dims[static_cast<std::size_t>(perm[k])];
  const Index n = m.rows();
  std::vector<Index> target(static_cast<std::size_t>(n));
  std::vector<Index> digits, out_digits(dims.size());
  for (Index p = 0; p < n; ++p) {
    split_index(p, dims, digits);
    for (std::size_t k = 0; k < dims.size(); ++k) out_digits[k] = digits[static_cast<std::size_t>(perm[k])];
    target[static_cast<std::size_t>(p)] = join_index(out_digits, out_dims);
  }
  ComplexMatrix out(n, n);
  for (Index q = 0; q < n; ++q) {
    for (Index p = 0; p < n; ++p) {
      out(target[static_cast<std::size_t>(p)], target[static_cast<std::size_t>(q)]) = m(p, q);
    }
  }
  return out;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  return eig(hermitian).eigenvalues().minCoeff();
}

ComplexMatrix sqrt_psd(const ComplexMatrix& hermitian) {
  auto es = eig(hermitian);
  // eigenvalues at roundoff level would otherwise contribute O(sqrt(eps))
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  const RealVector root =
      es.eigenvalues().unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix clip_to_psd(const ComplexMatrix& hermitian) {
  auto es = eig(hermitian);
  const RealVector clipped = es.eigenvalues().cwiseMax(0.0);
  ComplexMatrix out = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
  return (out + out.adjoint()) / 2.0;
}

namespace {

ComplexMatrix ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

ComplexMatrix haar_unitary(Index d, Rng& rng) {
  if (d < 1) throw ValidationError("haar_unitary: dimension must be positive");
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase freedom of QR so the distribution is exactly Haar.
  for (Index k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    const Complex phase = mag > 0.0 ? r(k, k) / mag : Complex(1.0, 0.0);
    q.col(k) *= phase;
  }
  return q;
}

DensityMatrix random_density_matrix(Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix((rho + rho.adjoint()) / 2.0);
}

ComplexMatrix random_hermitian(Index d, Rng& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

}  // namespace bqt
