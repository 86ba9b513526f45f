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

#include "bqt/cli/json_io.hpp"

#include <fstream>

namespace bqt::io {

using nlohmann::json;

namespace {

json rows_of(const RealMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

RealMatrix real_rows(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ValidationError(std::string(what) + ": expected rows");
  const auto rows = static_cast<Index>(j.size());
  if (!j[0].is_array()) throw ValidationError(std::string(what) + ": expected rows");
  const auto cols = static_cast<Index>(j[0].size());
  RealMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ValidationError(std::string(what) + ": ragged rows");
    }
    for (Index c = 0; c < cols; ++c) {
      const json& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw ValidationError(std::string(what) + ": non-numeric entry");
      m(r, c) = x.get<double>();
    }
  }
  return m;
}

Index dimension(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1) {
    throw ValidationError(std::string("missing or invalid '") + key + "'");
  }
  return static_cast<Index>(j[key].get<long long>());
}

}  // namespace

json to_json(const ComplexMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", rows_of(m.real())}, {"im", rows_of(m.imag())}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re")) throw ValidationError("matrix: missing 're'");
  const RealMatrix re = real_rows(j["re"], "matrix re");
  ComplexMatrix m = re.cast<Complex>();
  if (j.contains("im")) {
    const RealMatrix im = real_rows(j["im"], "matrix im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) {
      throw ValidationError("matrix: 're' and 'im' differ in shape");
    }
    m.imag() = im;
  }
  if ((j.contains("rows") && dimension(j, "rows") != m.rows()) ||
      (j.contains("cols") && dimension(j, "cols") != m.cols())) {
    throw ValidationError("matrix: 'rows'/'cols' disagree with the data");
  }
  return m;
}

json to_json(const BipartiteState& s) {
  json j = to_json(s.matrix());
  j["dimA"] = s.dimA();
  j["dimB"] = s.dimB();
  return j;
}

BipartiteState state_from_json(const json& j) {
  const ComplexMatrix m = matrix_from_json(j);
  return BipartiteState(dimension(j, "dimA"), dimension(j, "dimB"), m);
}

json to_json(const KrausChannel& ch) {
  json ops = json::array();
  for (const auto& k : ch.kraus()) ops.push_back(to_json(k));
  return {{"dimIn", ch.dimIn()}, {"dimOut", ch.dimOut()}, {"kraus", ops}};
}

ChoiMatrix channel_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("channel: expected an object");
  const Index din = dimension(j, "dimIn");
  const Index dout = dimension(j, "dimOut");
  if (j.contains("kraus")) {
    if (!j["kraus"].is_array() || j["kraus"].empty()) {
      throw ValidationError("channel: 'kraus' must be a non-empty array");
    }
    std::vector<ComplexMatrix> ops;
    for (const auto& k : j["kraus"]) ops.push_back(matrix_from_json(k));
    return choi_of(KrausChannel(din, dout, std::move(ops)));
  }
  if (j.contains("choi")) return ChoiMatrix(din, dout, matrix_from_json(j["choi"]));
  throw ValidationError("channel: need 'kraus' or 'choi'");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

BipartiteState read_state_file(const std::string& path) {
  try {
    return state_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw ValidationError("bad state file '" + path + "': " + e.what());
  }
}

ChoiMatrix read_channel_file(const std::string& path) {
  try {
    return channel_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    throw ValidationError("bad channel file '" + path + "': " + e.what());
  }
}

}  // namespace bqt::io
