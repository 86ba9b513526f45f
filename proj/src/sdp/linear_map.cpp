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

#include "bqt/sdp/linear_map.hpp"

namespace bqt::sdp {

namespace {

Index product(std::span<const Index> dims) {
  Index p = 1;
  for (Index d : dims) {
    if (d < 1) throw ValidationError("subsystem dimension must be positive");
    p *= d;
  }
  return p;
}

std::vector<Index> digits_of(Index index, std::span<const Index> dims) {
  std::vector<Index> digits(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
  return digits;
}

Index index_of(std::span<const Index> digits, std::span<const Index> dims) {
  Index index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
  return index;
}

}  // namespace

EntryMap::EntryMap(Index dimIn, Index dimOut)
    : dimIn_(dimIn), dimOut_(dimOut), targets_(static_cast<std::size_t>(dimIn * dimIn)) {
  if (dimIn < 1 || dimOut < 1) throw ValidationError("EntryMap: dimensions must be positive");
}

EntryMap EntryMap::identity(Index n) {
  EntryMap m(n, n);
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) m.add(p, q, p, q, 1.0);
  }
  return m;
}

EntryMap EntryMap::partial_transpose(std::span<const Index> dims,
                                     std::span<const int> transposed) {
  const Index n = product(dims);
  EntryMap m(n, n);
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      auto dp = digits_of(p, dims);
      auto dq = digits_of(q, dims);
      for (int s : transposed) {
        if (s < 0 || static_cast<std::size_t>(s) >= dims.size()) {
          throw ValidationError("EntryMap: subsystem out of range");
        }
        std::swap(dp[static_cast<std::size_t>(s)], dq[static_cast<std::size_t>(s)]);
      }
      m.add(p, q, index_of(dp, dims), index_of(dq, dims), 1.0);
    }
  }
  return m;
}

EntryMap EntryMap::partial_trace(std::span<const Index> dims, std::span<const int> traced) {
  const Index n = product(dims);
  std::vector<bool> gone(dims.size(), false);
  for (int s : traced) {
    if (s < 0 || static_cast<std::size_t>(s) >= dims.size()) {
      throw ValidationError("EntryMap: subsystem out of range");
    }
    gone[static_cast<std::size_t>(s)] = true;
  }
  std::vector<Index> kept_dims;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!gone[k]) kept_dims.push_back(dims[k]);
  }
  EntryMap m(n, product(kept_dims));
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      const auto dp = digits_of(p, dims);
      const auto dq = digits_of(q, dims);
      std::vector<Index> kp, kq;
      bool diagonal = true;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (gone[k]) {
          diagonal = diagonal && dp[k] == dq[k];
        } else {
          kp.push_back(dp[k]);
          kq.push_back(dq[k]);
        }
      }
      if (diagonal) m.add(p, q, index_of(kp, kept_dims), index_of(kq, kept_dims), 1.0);
    }
  }
  return m;
}

EntryMap EntryMap::kron_identity(Index n, Index k) {
  EntryMap m(n, n * k);
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      for (Index t = 0; t < k; ++t) m.add(p, q, p * k + t, q * k + t, 1.0);
    }
  }
  return m;
}

EntryMap EntryMap::identity_kron(Index k, Index n) {
  EntryMap m(n, n * k);
  for (Index p = 0; p < n; ++p) {
    for (Index q = 0; q < n; ++q) {
      for (Index t = 0; t < k; ++t) m.add(p, q, t * n + p, t * n + q, 1.0);
    }
  }
  return m;
}

void EntryMap::add(Index inRow, Index inCol, Index outRow, Index outCol, double coef) {
  if (inRow < 0 || inRow >= dimIn_ || inCol < 0 || inCol >= dimIn_ || outRow < 0 ||
      outRow >= dimOut_ || outCol < 0 || outCol >= dimOut_) {
    throw ValidationError("EntryMap: index out of range");
  }
  auto& list = targets_[static_cast<std::size_t>(inRow * dimIn_ + inCol)];
  for (auto& t : list) {
    if (t.row == outRow && t.col == outCol) {
      t.coef += coef;
      return;
    }
  }
  list.push_back({outRow, outCol, coef});
}

bool EntryMap::is_identity() const {
  if (dimIn_ != dimOut_) return false;
  for (Index p = 0; p < dimIn_; ++p) {
    for (Index q = 0; q < dimIn_; ++q) {
      const auto t = targets(p, q);
      if (t.size() != 1 || t[0].row != p || t[0].col != q || t[0].coef != 1.0) return false;
    }
  }
  return true;
}

ComplexMatrix EntryMap::apply(const ComplexMatrix& y) const {
  if (y.rows() != dimIn_ || y.cols() != dimIn_) throw ValidationError("EntryMap: size mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(dimOut_, dimOut_);
  for (Index p = 0; p < dimIn_; ++p) {
    for (Index q = 0; q < dimIn_; ++q) {
      for (const auto& t : targets(p, q)) out(t.row, t.col) += t.coef * y(p, q);
    }
  }
  return out;
}

ComplexMatrix EntryMap::apply_adjoint(const ComplexMatrix& c) const {
  if (c.rows() != dimOut_ || c.cols() != dimOut_) {
    throw ValidationError("EntryMap: size mismatch");
  }
  // Tr[c M(y)] = sum_{pq} y(p,q) sum_t coef c(t.col, t.row), so M*(c)(q,p) collects it.
  ComplexMatrix out = ComplexMatrix::Zero(dimIn_, dimIn_);
  for (Index p = 0; p < dimIn_; ++p) {
    for (Index q = 0; q < dimIn_; ++q) {
      for (const auto& t : targets(p, q)) out(q, p) += t.coef * c(t.col, t.row);
    }
  }
  return out;
}

EntryMap EntryMap::then(const EntryMap& after) const {
  if (after.dimIn_ != dimOut_) throw ValidationError("EntryMap: composition size mismatch");
  EntryMap m(dimIn_, after.dimOut_);
  for (Index p = 0; p < dimIn_; ++p) {
    for (Index q = 0; q < dimIn_; ++q) {
      for (const auto& mid : targets(p, q)) {
        for (const auto& t : after.targets(mid.row, mid.col)) {
          m.add(p, q, t.row, t.col, mid.coef * t.coef);
        }
      }
    }
  }
  return m;
}

}  // namespace bqt::sdp
