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

#include <span>
#include <vector>

#include "bqt/qcore.hpp"

namespace bqt::sdp {

/**
 * Linear map between square matrix spaces that sends each input entry (p, q)
 * to a real-weighted sum of output entries.
 *
 * Partial transposes, partial traces and tensoring with an identity all have
 * this form. Such maps commute with entrywise complex conjugation, which is
 * what lets a program with real data be solved over real symmetric matrices.
 */
class EntryMap {
 public:
  struct Target {
    Index row;
    Index col;
    double coef;
  };

  /// Zero map.
  EntryMap(Index dimIn, Index dimOut);

  static EntryMap identity(Index n);
  static EntryMap partial_transpose(std::span<const Index> dims,
                                    std::span<const int> transposed);
  static EntryMap partial_trace(std::span<const Index> dims, std::span<const int> traced);
  /// Y -> Y (x) I_k.
  static EntryMap kron_identity(Index n, Index k);
  /// Y -> I_k (x) Y.
  static EntryMap identity_kron(Index k, Index n);

  void add(Index inRow, Index inCol, Index outRow, Index outCol, double coef);

  Index dimIn() const { return dimIn_; }
  Index dimOut() const { return dimOut_; }
  bool is_identity() const;

  std::span<const Target> targets(Index inRow, Index inCol) const {
    return targets_[static_cast<std::size_t>(inRow * dimIn_ + inCol)];
  }

  ComplexMatrix apply(const ComplexMatrix& y) const;
  /// The map M* with Tr[c M(y)] = Tr[M*(c) y] for all y.
  ComplexMatrix apply_adjoint(const ComplexMatrix& c) const;
  /// after o this.
  EntryMap then(const EntryMap& after) const;

 private:
  Index dimIn_;
  Index dimOut_;
  std::vector<std::vector<Target>> targets_;
};

}  // namespace bqt::sdp
