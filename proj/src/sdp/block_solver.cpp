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

#include "bqt/sdp/block_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace bqt::sdp {

const char* to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::optimal:
      return "optimal";
    case SolverStatus::nearOptimal:
      return "nearOptimal";
    case SolverStatus::infeasible:
      return "infeasible";
    case SolverStatus::numericalFailure:
      return "numericalFailure";
  }
  return "unknown";
}

BlockConstraint::BlockConstraint(RealMatrix constant) : constant_(std::move(constant)) {
  if (constant_.rows() < 1 || constant_.rows() != constant_.cols()) {
    throw ValidationError("block constant must be square and non-empty");
  }
}

void BlockConstraint::add_image(Index coordinate, std::span<const BlockEntry> entries) {
  if (!coordinates_.empty() && coordinate <= coordinates_.back()) {
    throw ValidationError("block images must be added in increasing coordinate order");
  }
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= dim() || e.col < 0 || e.col >= dim()) {
      throw ValidationError("block image entry out of range");
    }
  }
  coordinates_.push_back(coordinate);
  entries_.insert(entries_.end(), entries.begin(), entries.end());
  offsets_.push_back(entries_.size());
}

namespace {

constexpr double kStepFraction = 0.95;
constexpr double kBlowup = 1e12;

RealMatrix sym(const RealMatrix& a) { return (a + a.transpose()) * 0.5; }

double inner(const RealMatrix& a, const RealMatrix& b) { return a.cwiseProduct(b).sum(); }

// sum_i y_i A_{b,i}
RealMatrix adjoint_block(const BlockConstraint& blk, const RealVector& y) {
  RealMatrix out = RealMatrix::Zero(blk.dim(), blk.dim());
  for (std::size_t k = 0; k < blk.image_count(); ++k) {
    const double yi = y(blk.coordinate(k));
    if (yi == 0.0) continue;
    for (const auto& e : blk.image(k)) out(e.row, e.col) += yi * e.value;
  }
  return out;
}

// out_i += <A_{b,i}, g>
void accumulate_forward(const BlockConstraint& blk, const RealMatrix& g, RealVector& out) {
  for (std::size_t k = 0; k < blk.image_count(); ++k) {
    double s = 0.0;
    for (const auto& e : blk.image(k)) s += e.value * g(e.row, e.col);
    out(blk.coordinate(k)) += s;
  }
}

// Upper triangle of M_ij += Tr[A_i X A_j Z^{-1}].
void accumulate_schur(const BlockConstraint& blk, const RealMatrix& x, const RealMatrix& zinv,
                      RealMatrix& m) {
  const std::size_t count = blk.image_count();
  for (std::size_t k1 = 0; k1 < count; ++k1) {
    const Index i = blk.coordinate(k1);
    const auto img1 = blk.image(k1);
    for (std::size_t k2 = k1; k2 < count; ++k2) {
      const auto img2 = blk.image(k2);
      double s = 0.0;
      for (const auto& e1 : img1) {
        // x(e1.col, r) = x(r, e1.col) by symmetry, so both lookups walk columns.
        const double* xc = x.data() + static_cast<std::ptrdiff_t>(e1.col) * x.rows();
        const double* zc = zinv.data() + static_cast<std::ptrdiff_t>(e1.row) * zinv.rows();
        double t = 0.0;
        for (const auto& e2 : img2) t += e2.value * xc[e2.row] * zc[e2.col];
        s += e1.value * t;
      }
      m(i, blk.coordinate(k2)) += s;
    }
  }
}

// Largest alpha with x + alpha dx PSD (infinity when unbounded).
double max_step(const RealMatrix& x, const RealMatrix& dx) {
  Eigen::LLT<RealMatrix> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  RealMatrix s = llt.matrixL().solve(dx);
  s = llt.matrixL().solve(s.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym(s), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

struct Iterate {
  std::vector<RealMatrix> x;
  std::vector<RealMatrix> z;
  RealVector y;
};

}  // namespace

BlockSolverResult solve_block_sdp(const BlockSdp& problem, const BlockSolverOptions& options) {
  const Index m = problem.objective.size();
  const auto& blocks = problem.blocks;
  const RealVector& b = problem.objective;
  if (m < 1) throw ValidationError("SDP has no variables");
  if (blocks.empty()) throw ValidationError("SDP has no PSD blocks");

  std::vector<bool> touched(static_cast<std::size_t>(m), false);
  Index total_dim = 0;
  double norm_c2 = 0.0;
  for (const auto& blk : blocks) {
    if ((blk.constant() - blk.constant().transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw ValidationError("block constant must be symmetric");
    }
    for (std::size_t k = 0; k < blk.image_count(); ++k) {
      const Index c = blk.coordinate(k);
      if (c < 0 || c >= m) throw ValidationError("block image coordinate out of range");
      touched[static_cast<std::size_t>(c)] = true;
    }
    total_dim += blk.dim();
    norm_c2 += blk.constant().squaredNorm();
  }
  if (std::find(touched.begin(), touched.end(), false) != touched.end()) {
    throw ValidationError("every SDP coordinate must appear in some PSD block");
  }
  const double norm_b = b.norm();
  const double norm_c = std::sqrt(norm_c2);

  // Starting point scaled to the data, following the usual SDPT3 heuristic.
  Iterate it;
  it.y = RealVector::Zero(m);
  for (const auto& blk : blocks) {
    const double n = static_cast<double>(blk.dim());
    double max_a = 0.0;
    double ratio = 0.0;
    for (std::size_t k = 0; k < blk.image_count(); ++k) {
      double a2 = 0.0;
      for (const auto& e : blk.image(k)) a2 += e.value * e.value;
      const double a = std::sqrt(a2);
      max_a = std::max(max_a, a);
      ratio = std::max(ratio, (1.0 + std::abs(b(blk.coordinate(k)))) / (1.0 + a));
    }
    const double xi = std::max({10.0, std::sqrt(n), n * ratio});
    const double eta = std::max({10.0, std::sqrt(n), max_a, blk.constant().norm()});
    it.x.push_back(xi * RealMatrix::Identity(blk.dim(), blk.dim()));
    it.z.push_back(eta * RealMatrix::Identity(blk.dim(), blk.dim()));
  }

  BlockSolverResult result;
  Iterate best = it;
  double best_merit = std::numeric_limits<double>::infinity();
  BlockSolverResult best_stats;
  int stalled = 0;

  const std::size_t nb = blocks.size();
  std::vector<RealMatrix> rd(nb), zinv(nb), xrdz(nb), dx(nb), dz(nb), dxp(nb), dzp(nb);
  RealMatrix schur(m, m);

  auto finish = [&](SolverStatus status, bool use_best) {
    BlockSolverResult r = use_best ? best_stats : result;
    const Iterate& src = use_best ? best : it;
    r.status = status;
    r.y = src.y;
    r.primal = src.x;
    r.slack = src.z;
    return r;
  };

  auto classify_failure = [&]() {
    const double merit = best_merit;
    if (merit < 1e-6) return finish(SolverStatus::nearOptimal, true);
    return finish(SolverStatus::numericalFailure, true);
  };

  for (int iter = 0; iter <= options.maxIterations; ++iter) {
    // Residuals and convergence measures.
    RealVector ax = RealVector::Zero(m);
    double pobj = 0.0, gap = 0.0, rd2 = 0.0, xnorm = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      rd[k] = blocks[k].constant() - it.z[k] - adjoint_block(blocks[k], it.y);
      accumulate_forward(blocks[k], it.x[k], ax);
      pobj += inner(blocks[k].constant(), it.x[k]);
      gap += inner(it.x[k], it.z[k]);
      rd2 += rd[k].squaredNorm();
      xnorm = std::max(xnorm, it.x[k].norm());
    }
    const RealVector rp = b - ax;
    const double dobj = b.dot(it.y);
    result.primalObjective = pobj;
    result.dualObjective = dobj;
    result.primalInfeasibility = rp.norm() / (1.0 + norm_b);
    result.dualInfeasibility = std::sqrt(rd2) / (1.0 + norm_c);
    result.relativeGap =
        std::max(std::abs(gap), std::abs(pobj - dobj)) / (1.0 + std::abs(pobj) + std::abs(dobj));
    result.iterations = iter;

    if (options.log) {
      *options.log << std::setw(4) << iter << std::scientific << std::setprecision(3)
                   << "  pobj " << pobj << "  dobj " << dobj << "  gap " << result.relativeGap
                   << "  pinf " << result.primalInfeasibility << "  dinf "
                   << result.dualInfeasibility << std::defaultfloat << '\n';
    }

    const double merit = std::max(
        {result.relativeGap, result.primalInfeasibility, result.dualInfeasibility});
    if (merit < best_merit) {
      best_merit = merit;
      best = it;
      best_stats = result;
    }
    if (merit < options.tolerance) return finish(SolverStatus::optimal, false);
    if (xnorm > kBlowup * (1.0 + norm_b) || it.y.norm() > kBlowup * (1.0 + norm_c)) {
      return finish(SolverStatus::infeasible, false);
    }
    if (iter == options.maxIterations) break;

    const double mu = gap / static_cast<double>(total_dim);

    for (std::size_t k = 0; k < nb; ++k) {
      Eigen::LLT<RealMatrix> llt(it.z[k]);
      if (llt.info() != Eigen::Success) return classify_failure();
      zinv[k] = sym(llt.solve(RealMatrix::Identity(blocks[k].dim(), blocks[k].dim())));
      xrdz[k] = it.x[k] * rd[k] * zinv[k];
    }

    schur.setZero();
    for (std::size_t k = 0; k < nb; ++k) accumulate_schur(blocks[k], it.x[k], zinv[k], schur);
    Eigen::LLT<RealMatrix, Eigen::Upper> factor(schur);
    if (factor.info() != Eigen::Success) {
      const double shift = 1e-13 * schur.diagonal().cwiseAbs().maxCoeff();
      bool ok = false;
      for (int attempt = 0; attempt < 4 && !ok; ++attempt) {
        RealMatrix shifted = schur;
        shifted.diagonal().array() += shift * std::pow(100.0, attempt);
        factor.compute(shifted);
        ok = factor.info() == Eigen::Success;
      }
      if (!ok) return classify_failure();
    }

    auto directions = [&](const RealVector& rhs, double sigma_mu, bool corrector) {
      const RealVector dy = factor.solve(rhs);
      for (std::size_t k = 0; k < nb; ++k) {
        dz[k] = rd[k] - adjoint_block(blocks[k], dy);
        RealMatrix prod = it.x[k] * dz[k] * zinv[k];
        if (corrector) prod += dxp[k] * dzp[k] * zinv[k];
        dx[k] = sigma_mu * zinv[k] - it.x[k] - sym(prod);
      }
      return dy;
    };

    // Predictor (affine scaling) step.
    RealVector rhs = b;
    for (std::size_t k = 0; k < nb; ++k) accumulate_forward(blocks[k], xrdz[k], rhs);
    directions(rhs, 0.0, false);
    double ap = 1.0, ad = 1.0;
    for (std::size_t k = 0; k < nb; ++k) {
      ap = std::min(ap, max_step(it.x[k], dx[k]));
      ad = std::min(ad, max_step(it.z[k], dz[k]));
    }
    double gap_pred = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      gap_pred += inner(it.x[k] + ap * dx[k], it.z[k] + ad * dz[k]);
      dxp[k] = dx[k];
      dzp[k] = dz[k];
    }
    const double ratio = gap > 0.0 ? std::max(gap_pred, 0.0) / gap : 0.0;
    const double sigma = std::clamp(ratio * ratio * ratio, 0.0, 1.0);

    // Corrector step.
    rhs = b;
    for (std::size_t k = 0; k < nb; ++k) {
      accumulate_forward(blocks[k], xrdz[k], rhs);
      accumulate_forward(blocks[k], -sigma * mu * zinv[k], rhs);
      accumulate_forward(blocks[k], dxp[k] * dzp[k] * zinv[k], rhs);
    }
    const RealVector dy = directions(rhs, sigma * mu, true);
    ap = 1.0;
    ad = 1.0;
    for (std::size_t k = 0; k < nb; ++k) {
      ap = std::min(ap, kStepFraction * max_step(it.x[k], dx[k]));
      ad = std::min(ad, kStepFraction * max_step(it.z[k], dz[k]));
    }
    if (!(ap > 0.0) || !(ad > 0.0) || !dy.allFinite()) return classify_failure();
    for (std::size_t k = 0; k < nb; ++k) {
      it.x[k] = sym(it.x[k] + ap * dx[k]);
      it.z[k] = sym(it.z[k] + ad * dz[k]);
    }
    it.y += ad * dy;

    stalled = (ap < 1e-8 && ad < 1e-8) ? stalled + 1 : 0;
    if (stalled >= 3) return classify_failure();
  }
  return classify_failure();
}

}  // namespace bqt::sdp
