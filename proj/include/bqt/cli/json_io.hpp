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

#include <string>

#include "json.hpp"

#include "bqt/channels.hpp"
#include "bqt/qcore.hpp"

namespace bqt::io {

// Matrices are objects {"rows": n, "cols": m, "re": [[...]], "im": [[...]]}
// with row arrays; "im" may be omitted for real data, "rows"/"cols" are checked when present.
nlohmann::json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

// {"dimA": a, "dimB": b, "re": ..., "im": ...}
nlohmann::json to_json(const BipartiteState& s);
BipartiteState state_from_json(const nlohmann::json& j);

// {"dimIn": m, "dimOut": n, "kraus": [matrix, ...]} or {..., "choi": matrix}
nlohmann::json to_json(const KrausChannel& ch);
ChoiMatrix channel_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
BipartiteState read_state_file(const std::string& path);
ChoiMatrix read_channel_file(const std::string& path);

}  // namespace bqt::io
