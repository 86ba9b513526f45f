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

#include <gtest/gtest.h>

#include "bqt/qcore.hpp"

namespace bqt::testing {

inline double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline ComplexMatrix projector(Index d, Index k) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(k, k) = 1.0;
  return m;
}

/// Reference partial trace written with explicit index loops.
inline ComplexMatrix loop_trace_b(const ComplexMatrix& m, Index da, Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(da, da);
  for (Index i = 0; i < da; ++i)
    for (Index k = 0; k < da; ++k)
      for (Index j = 0; j < db; ++j) out(i, k) += m(i * db + j, k * db + j);
  return out;
}

inline ComplexMatrix loop_trace_a(const ComplexMatrix& m, Index da, Index db) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Index j = 0; j < db; ++j)
    for (Index l = 0; l < db; ++l)
      for (Index i = 0; i < da; ++i) out(j, l) += m(i * db + j, i * db + l);
  return out;
}

inline ComplexMatrix loop_transpose_b(const ComplexMatrix& m, Index da, Index db) {
  ComplexMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < da; ++i)
    for (Index j = 0; j < db; ++j)
      for (Index k = 0; k < da; ++k)
        for (Index l = 0; l < db; ++l) out(i * db + j, k * db + l) = m(i * db + l, k * db + j);
  return out;
}

inline RealVector eigenvalues(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  return es.eigenvalues();
}

}  // namespace bqt::testing
