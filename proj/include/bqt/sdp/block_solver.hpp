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

#include <iosfwd>
#include <span>
#include <vector>

#include "bqt/qcore.hpp"

namespace bqt::sdp {

enum class SolverStatus { optimal, nearOptimal, infeasible, numericalFailure };

const char* to_string(SolverStatus s);

struct BlockEntry {
  int row;
  int col;
  double value;
};

/**
 * One real symmetric block of the slack Z = C - sum_i y_i A_i.
 *
 * Only coordinates whose A_i is nonzero on this block are listed; each image
 * stores every nonzero entry of A_i (both triangles). Coordinates must be
 * added in increasing order.
 */
class BlockConstraint {
 public:
  explicit BlockConstraint(RealMatrix constant);

  void add_image(Index coordinate, std::span<const BlockEntry> entries);

  Index dim() const { return constant_.rows(); }
  const RealMatrix& constant() const { return constant_; }
  std::size_t image_count() const { return coordinates_.size(); }
  Index coordinate(std::size_t k) const { return coordinates_[k]; }
  std::span<const BlockEntry> image(std::size_t k) const {
    return {entries_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
  }

 private:
  RealMatrix constant_;
  std::vector<Index> coordinates_;
  std::vector<std::size_t> offsets_{0};
  std::vector<BlockEntry> entries_;
};

/// maximize b^T y  s.t.  C_b - sum_i y_i A_{b,i} >= 0 for every block b.
struct BlockSdp {
  RealVector objective;
  std::vector<BlockConstraint> blocks;
};

struct BlockSolverOptions {
  double tolerance = 1e-8;
  int maxIterations = 200;
  std::ostream* log = nullptr;
};

struct BlockSolverResult {
  SolverStatus status = SolverStatus::numericalFailure;
  RealVector y;
  std::vector<RealMatrix> primal;  // X, the multiplier of each block
  std::vector<RealMatrix> slack;   // Z
  double primalObjective = 0.0;    // sum_b <C_b, X_b>
  double dualObjective = 0.0;      // b^T y
  double primalInfeasibility = 0.0;
  double dualInfeasibility = 0.0;
  double relativeGap = 0.0;
  int iterations = 0;
};

/**
 * Infeasible-start primal-dual interior-point method with the HKM search
 * direction and Mehrotra predictor-corrector steps.
 *
 * The primal problem is min <C, X> s.t. <A_i, X> = b_i, X >= 0; `y` solves
 * the dual problem above. Stops when the relative gap and both relative
 * infeasibilities drop below `tolerance`.
 */
BlockSolverResult solve_block_sdp(const BlockSdp& problem, const BlockSolverOptions& options);

}  // namespace bqt::sdp
