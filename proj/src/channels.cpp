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

#include "bqt/channels.hpp"

#include <cmath>
#include <sstream>

namespace bqt {

namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

ComplexMatrix tensor_identity(Index left, const ComplexMatrix& a, Index right) {
  return tensor(tensor(ComplexMatrix::Identity(left, left), a),
                ComplexMatrix::Identity(right, right));
}

}  // namespace

KrausChannel::KrausChannel(Index dimIn, Index dimOut, std::vector<ComplexMatrix> kraus,
                           double tpTolerance)
    : dimIn_(dimIn), dimOut_(dimOut), kraus_(std::move(kraus)) {
  if (dimIn < 1 || dimOut < 1) throw ValidationError("channel dimensions must be positive");
  if (kraus_.empty()) throw ValidationError("channel needs at least one Kraus operator");
  ComplexMatrix sum = ComplexMatrix::Zero(dimIn, dimIn);
  for (const auto& a : kraus_) {
    if (a.rows() != dimOut || a.cols() != dimIn) {
      throw ValidationError("Kraus operator has wrong shape");
    }
    sum += a.adjoint() * a;
  }
  const double defect = (sum - ComplexMatrix::Identity(dimIn, dimIn)).cwiseAbs().maxCoeff();
  if (defect > tpTolerance) {
    std::ostringstream msg;
    msg << "Kraus operators are not trace preserving (defect " << defect << ")";
    throw ValidationError(msg.str());
  }
}

ComplexMatrix KrausChannel::apply_to(const ComplexMatrix& x) const {
  if (x.rows() != dimIn_ || x.cols() != dimIn_) {
    throw ValidationError("channel input dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dimOut_, dimOut_);
  for (const auto& a : kraus_) out += a * x * a.adjoint();
  return out;
}

ChoiMatrix::ChoiMatrix(Index dimIn, Index dimOut, const ComplexMatrix& matrix,
                       double tolerance)
    : dimIn_(dimIn), dimOut_(dimOut) {
  if (dimIn < 1 || dimOut < 1) throw ValidationError("channel dimensions must be positive");
  if (matrix.rows() != dimIn * dimOut || matrix.cols() != dimIn * dimOut) {
    throw ValidationError("Choi matrix has wrong size");
  }
  if (!is_hermitian(matrix, tolerance)) throw ValidationError("Choi matrix is not Hermitian");
  m_ = (matrix + matrix.adjoint()) / 2.0;
  const double lmin = min_eigenvalue(m_);
  if (lmin < -std::max(tol::kPsd, tolerance)) {
    std::ostringstream msg;
    msg << "Choi matrix is not positive semidefinite (min eigenvalue " << lmin << ")";
    throw ValidationError(msg.str());
  }
  const Index dims[] = {dimIn, dimOut};
  const int out[] = {1};
  const ComplexMatrix marginal = partial_trace(m_, dims, out);
  const double defect =
      (marginal - ComplexMatrix::Identity(dimIn, dimIn)).cwiseAbs().maxCoeff();
  if (defect > tolerance) {
    std::ostringstream msg;
    msg << "Choi matrix is not trace preserving (defect " << defect << ")";
    throw ValidationError(msg.str());
  }
}

ComplexMatrix ChoiMatrix::apply_to(const ComplexMatrix& x) const {
  if (x.rows() != dimIn_ || x.cols() != dimIn_) {
    throw ValidationError("channel input dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dimOut_, dimOut_);
  for (Index i = 0; i < dimIn_; ++i) {
    for (Index j = 0; j < dimIn_; ++j) {
      if (x(i, j) == Complex(0.0, 0.0)) continue;
      out += x(i, j) * m_.block(i * dimOut_, j * dimOut_, dimOut_, dimOut_);
    }
  }
  return out;
}

ChoiMatrix BipartiteChannel::choi() const {
  if (const auto* k = std::get_if<KrausChannel>(&representation)) return choi_of(*k);
  return std::get<ChoiMatrix>(representation);
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  return DensityMatrix(ch.apply_to(rho.matrix()));
}

DensityMatrix apply(const ChoiMatrix& ch, const DensityMatrix& rho) {
  return DensityMatrix(ch.apply_to(rho.matrix()));
}

DensityMatrix apply(const BipartiteChannel& ch, const DensityMatrix& rho) {
  return std::visit([&](const auto& rep) { return apply(rep, rho); }, ch.representation);
}

ChoiMatrix choi_of(const KrausChannel& ch) {
  const Index din = ch.dimIn();
  const Index dout = ch.dimOut();
  ComplexMatrix j = ComplexMatrix::Zero(din * dout, din * dout);
  ComplexVector v(din * dout);
  for (const auto& a : ch.kraus()) {
    for (Index i = 0; i < din; ++i) v.segment(i * dout, dout) = a.col(i);
    j += v * v.adjoint();
  }
  return ChoiMatrix(din, dout, j);
}

KrausChannel kraus_of(const ChoiMatrix& choi) {
  const Index din = choi.dimIn();
  const Index dout = choi.dimOut();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(choi.matrix());
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lambda = es.eigenvalues()(k);
    if (lambda < -tol::kPsd) {
      throw ValidationError("kraus_of: Choi matrix is not positive semidefinite");
    }
    if (lambda < tol::kPsd) continue;
    ComplexMatrix a(dout, din);
    for (Index i = 0; i < din; ++i) {
      a.col(i) = std::sqrt(lambda) * es.eigenvectors().col(k).segment(i * dout, dout);
    }
    kraus.push_back(std::move(a));
  }
  // Dropping sub-tolerance eigenvalues perturbs trace preservation by at most
  // their sum, so the check is relaxed accordingly.
  return KrausChannel(din, dout, std::move(kraus),
                      std::max(1e-9, 2.0 * tol::kPsd * static_cast<double>(din * dout)));
}

KrausChannel identity_channel(Index d) {
  return KrausChannel(d, d, {ComplexMatrix::Identity(d, d)});
}

KrausChannel unitary_channel(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw ValidationError("unitary must be square");
  return KrausChannel(u.rows(), u.rows(), {u});
}

KrausChannel completely_depolarizing_channel(Index d) {
  if (d < 1) throw ValidationError("dimension must be positive");
  std::vector<ComplexMatrix> kraus;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      ComplexMatrix a = ComplexMatrix::Zero(d, d);
      a(i, j) = scale;
      kraus.push_back(std::move(a));
    }
  }
  return KrausChannel(d, d, std::move(kraus));
}

KrausChannel gen_pauli_channel(Index d) {
  if (d < 2) throw ValidationError("gen_pauli_channel: requires d >= 2");
  const double scale = 1.0 / std::sqrt(static_cast<double>(d * d - 1));
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(d * d - 1));
  for (Index z = 0; z < d; ++z) {
    for (Index x = 0; x < d; ++x) {
      if (z == 0 && x == 0) continue;
      kraus.push_back(scale * heisenberg_weyl(d, z, x));
    }
  }
  return KrausChannel(d, d, std::move(kraus));
}

KrausChannel gadc(double gamma, double n) {
  if (!in_unit_interval(gamma)) throw ValidationError("gadc: gamma must lie in [0, 1]");
  if (!in_unit_interval(n)) throw ValidationError("gadc: N must lie in [0, 1]");
  const double keep = std::sqrt(1.0 - gamma);
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  a1(0, 0) = 1.0;
  a1(1, 1) = keep;
  a1 *= std::sqrt(1.0 - n);
  ComplexMatrix a2 = ComplexMatrix::Zero(2, 2);
  a2(0, 1) = std::sqrt(gamma * (1.0 - n));
  ComplexMatrix a3 = ComplexMatrix::Zero(2, 2);
  a3(0, 0) = keep;
  a3(1, 1) = 1.0;
  a3 *= std::sqrt(n);
  ComplexMatrix a4 = ComplexMatrix::Zero(2, 2);
  a4(1, 0) = std::sqrt(gamma * n);
  return KrausChannel(2, 2, {a1, a2, a3, a4});
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& ka : a.kraus()) {
    for (const auto& kb : b.kraus()) kraus.push_back(tensor(ka, kb));
  }
  return KrausChannel(a.dimIn() * b.dimIn(), a.dimOut() * b.dimOut(), std::move(kraus));
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.dimIn() != first.dimOut()) throw ValidationError("compose: dimension mismatch");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(second.kraus().size() * first.kraus().size());
  for (const auto& s : second.kraus()) {
    for (const auto& f : first.kraus()) kraus.push_back(s * f);
  }
  return KrausChannel(first.dimIn(), second.dimOut(), std::move(kraus));
}

ChoiMatrix mix(std::span<const std::pair<double, ChoiMatrix>> terms) {
  if (terms.empty()) throw ValidationError("mix: no channels given");
  const Index din = terms.front().second.dimIn();
  const Index dout = terms.front().second.dimOut();
  ComplexMatrix sum = ComplexMatrix::Zero(din * dout, din * dout);
  double total = 0.0;
  for (const auto& [p, ch] : terms) {
    if (ch.dimIn() != din || ch.dimOut() != dout) throw ValidationError("mix: dimension mismatch");
    if (p < 0.0) throw ValidationError("mix: negative weight");
    sum += p * ch.matrix();
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("mix: weights must sum to one");
  return ChoiMatrix(din, dout, sum);
}

BipartiteChannel swap_channel(Index d) {
  if (d < 1) throw ValidationError("swap_channel: dimension must be positive");
  return BipartiteChannel{BipartiteDims{d, d, d, d}, unitary_channel(swap_operator(d, d))};
}

ComplexMatrix apply_local(const KrausChannel& ch, const ComplexMatrix& x,
                          std::span<const Index> dims, int which) {
  if (which < 0 || static_cast<std::size_t>(which) >= dims.size()) {
    throw ValidationError("apply_local: subsystem out of range");
  }
  if (dims[static_cast<std::size_t>(which)] != ch.dimIn()) {
    throw ValidationError("apply_local: subsystem dimension mismatch");
  }
  Index left = 1, right = 1, total = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    total *= dims[k];
    if (k < static_cast<std::size_t>(which)) left *= dims[k];
    if (k > static_cast<std::size_t>(which)) right *= dims[k];
  }
  if (x.rows() != total || x.cols() != total) throw ValidationError("apply_local: size mismatch");
  const Index out_dim = left * ch.dimOut() * right;
  ComplexMatrix out = ComplexMatrix::Zero(out_dim, out_dim);
  for (const auto& a : ch.kraus()) {
    const ComplexMatrix big = tensor_identity(left, a, right);
    out += big * x * big.adjoint();
  }
  return out;
}

double swap_symmetry_defect(const ComplexMatrix& u, const ComplexMatrix& v,
                            const DensityMatrix& rho) {
  const Index d = u.rows();
  if (u.cols() != d || v.rows() != d || v.cols() != d || rho.dim() != d * d) {
    throw ValidationError("swap_symmetry_defect: dimension mismatch");
  }
  const ComplexMatrix swap = swap_operator(d, d);
  const ComplexMatrix after = tensor(v, u);
  const ComplexMatrix before = tensor(u, v);
  const ComplexMatrix lhs = after * swap * rho.matrix() * swap.adjoint() * after.adjoint();
  const ComplexMatrix rhs = swap * before * rho.matrix() * before.adjoint() * swap.adjoint();
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

bool verify_swap_symmetry(Index d, int trials, std::uint64_t seed) {
  if (d < 1) throw ValidationError("verify_swap_symmetry: dimension must be positive");
  if (trials < 1) throw ValidationError("verify_swap_symmetry: trials must be positive");
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix u = haar_unitary(d, rng);
    const ComplexMatrix v = haar_unitary(d, rng);
    const DensityMatrix rho = random_density_matrix(d * d, rng);
    if (swap_symmetry_defect(u, v, rho) > 1e-9) return false;
  }
  return true;
}

}  // namespace bqt
