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

#include "bqt/resources.hpp"

#include <algorithm>
#include <cmath>

#include "bqt/channels.hpp"

namespace bqt {

void IsotropicParams::validate() const {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw ValidationError("isotropic fidelity must lie in [0, 1]");
  }
  if (dim < 2) throw ValidationError("isotropic dimension must be at least 2");
}

void GadcParams::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("gamma must lie in [0, 1]");
  if (!(noise >= 0.0 && noise <= 1.0)) throw ValidationError("noise N must lie in [0, 1]");
}

BipartiteState isotropic_state(const IsotropicParams& p) {
  p.validate();
  const Index d = p.dim;
  const ComplexMatrix phi = max_entangled_state(d).matrix();
  const ComplexMatrix id = ComplexMatrix::Identity(d * d, d * d);
  const double rest = (1.0 - p.fidelity) / static_cast<double>(d * d - 1);
  return BipartiteState(d, d, p.fidelity * phi + rest * (id - phi));
}

double max_entangled_overlap(const BipartiteState& s) {
  if (s.dimA() != s.dimB()) {
    throw ValidationError("overlap with Phi requires equal local dimensions");
  }
  const Index d = s.dimA();
  // <Phi|rho|Phi> = (1/d) sum_{ij} rho(ii, jj)
  double sum = 0.0;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) sum += s.matrix()(i * d + i, j * d + j).real();
  }
  return sum / static_cast<double>(d);
}

BipartiteState twirl_to_isotropic(const BipartiteState& s) {
  if (s.dimA() != s.dimB()) {
    throw ValidationError("twirl_to_isotropic: requires dimA == dimB");
  }
  if (s.dimA() < 2) throw ValidationError("twirl_to_isotropic: requires dimension >= 2");
  const double f = std::clamp(max_entangled_overlap(s), 0.0, 1.0);
  return isotropic_state({f, s.dimA()});
}

BipartiteState gadc_resource_state(const GadcParams& p) {
  p.validate();
  const ComplexMatrix bell = max_entangled_state(2).matrix();
  ComplexMatrix state = tensor(bell, bell);  // A1 B1 A2 B2
  const Index dims[] = {2, 2, 2, 2};
  const KrausChannel noise = gadc(p.gamma, p.noise);
  for (int q = 0; q < 4; ++q) state = apply_local(noise, state, dims, q);
  const int regroup[] = {0, 2, 1, 3};  // -> A1 A2 B1 B2
  return BipartiteState(4, 4, permute_subsystems(state, dims, regroup));
}

double gadc_entanglement_fidelity(const GadcParams& p) {
  p.validate();
  const double g = p.gamma;
  const double n = p.noise;
  const double root = 1.0 + (g / 2.0) * (g - 2.0 * (1.0 + g * n * (1.0 - n)));
  return root * root;
}

}  // namespace bqt
