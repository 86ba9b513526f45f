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

#include "bqt/qcore.hpp"

namespace bqt {

enum class Branch { noEntanglement, midDimension, highDimension };

const char* to_string(Branch b);

struct ErrorBranch {
  double value = 0.0;
  Branch branch = Branch::noEntanglement;
  /// PPT and LOCC errors are known to coincide. False means unknown.
  bool loccTight = false;
};

/// 1 - 1/d^2.
double no_resource_error(Index d);

/// Piecewise error for an isotropic resource of fidelity F and local dimension dHat.
ErrorBranch isotropic_error(Index d, double fidelity, Index dHat);

/// Evaluates one branch of the isotropic formula regardless of which predicate holds.
double isotropic_branch_value(Branch b, Index d, double fidelity, Index dHat);

/// 1 - max{F, 1/16} for the two-pair GADC resource, swap dimension 2.
double gadc_error(double gamma, double noise);

/// Error of the twirl-then-isotropic protocol on the GADC resource, i.e. the
/// isotropic formula at d = 2, dHat = 4.
double gadc_twirl_protocol_error(double gamma, double noise);

}  // namespace bqt
