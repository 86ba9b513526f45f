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

#include "bqt/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "bqt/resources.hpp"

namespace bqt {

const char* to_string(Branch b) {
  switch (b) {
    case Branch::noEntanglement:
      return "noEntanglement";
    case Branch::midDimension:
      return "midDimension";
    case Branch::highDimension:
      return "highDimension";
  }
  return "unknown";
}

double no_resource_error(Index d) {
  if (d < 1) throw ValidationError("d must be at least 1");
  const double dd = static_cast<double>(d);
  return 1.0 - 1.0 / (dd * dd);
}

namespace {

void check_isotropic(Index d, double fidelity, Index dHat) {
  if (d < 2) throw ValidationError("d must be at least 2");
  if (dHat < 2) throw ValidationError("resource dimension must be at least 2");
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw ValidationError("fidelity must lie in [0, 1]");
}

}  // namespace

double isotropic_branch_value(Branch b, Index d, double fidelity, Index dHat) {
  check_isotropic(d, fidelity, dHat);
  const double d2 = static_cast<double>(d * d);
  const double dh = static_cast<double>(dHat);
  switch (b) {
    case Branch::noEntanglement:
      return 1.0 - 1.0 / d2;
    case Branch::midDimension:
      return 1.0 - fidelity * dh / d2;
    case Branch::highDimension:
      return (1.0 - 1.0 / d2) * (1.0 - fidelity) / (1.0 - 1.0 / dh);
  }
  throw ValidationError("unknown branch");
}

ErrorBranch isotropic_error(Index d, double fidelity, Index dHat) {
  check_isotropic(d, fidelity, dHat);
  ErrorBranch out;
  if (fidelity <= 1.0 / static_cast<double>(dHat)) {
    out.branch = Branch::noEntanglement;
    out.loccTight = true;
  } else if (dHat <= d * d) {
    out.branch = Branch::midDimension;
    out.loccTight = true;
  } else {
    out.branch = Branch::highDimension;
    out.loccTight = false;
  }
  out.value = isotropic_branch_value(out.branch, d, fidelity, dHat);
  return out;
}

double gadc_error(double gamma, double noise) {
  const double f = gadc_entanglement_fidelity({gamma, noise});
  return 1.0 - std::max(f, 1.0 / 16.0);
}

double gadc_twirl_protocol_error(double gamma, double noise) {
  const double f = gadc_entanglement_fidelity({gamma, noise});
  return isotropic_error(2, std::clamp(f, 0.0, 1.0), 4).value;
}

}  // namespace bqt
