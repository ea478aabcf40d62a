// Copyright 2026 The marisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "marisim/snapshot_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace marisim {

namespace {

using json = nlohmann::json;

json matrix_to_json(const CMat& A) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < A.cols(); ++c) row.push_back({A(r, c).real(), A(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

CMat matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  CMat A(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError(what + ": rows must all have the same length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw ConfigError(what + ": entries must be [re, im] pairs");
      }
      A(r, c) = {z[0].get<double>(), z[1].get<double>()};
    }
  }
  return A;
}

}  // namespace

std::string snapshot_to_json(const NetworkSnapshot& snap) {
  nlohmann::ordered_json doc;
  doc["noise_power_w"] = snap.noise_power;
  doc["bandwidth_hz"] = snap.bandwidth;
  doc["tx_power_w"] = snap.tx_power;
  doc["Hd"] = matrix_to_json(snap.Hd);
  json g = json::array();
  for (const CMat& Gi : snap.G) g.push_back(matrix_to_json(Gi));
  doc["G"] = g;
  return doc.dump() + "\n";
}

NetworkSnapshot snapshot_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("snapshot is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("snapshot must be an object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& k = it.key();
    if (k != "noise_power_w" && k != "bandwidth_hz" && k != "tx_power_w" && k != "Hd" && k != "G") {
      throw ConfigError("unknown snapshot key '" + k + "'");
    }
  }
  NetworkSnapshot snap;
  try {
    snap.noise_power = doc.at("noise_power_w").get<double>();
    snap.bandwidth = doc.at("bandwidth_hz").get<double>();
    snap.tx_power = doc.at("tx_power_w").get<std::vector<double>>();
    snap.Hd = matrix_from_json(doc.at("Hd"), "Hd");
    for (const json& g : doc.at("G")) snap.G.push_back(matrix_from_json(g, "G"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("snapshot: ") + e.what());
  }
  try {
    snap.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("snapshot: ") + e.what());
  }
  return snap;
}

void save_snapshot(const NetworkSnapshot& snap, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << snapshot_to_json(snap);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

NetworkSnapshot load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open snapshot '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return snapshot_from_json(buf.str());
}

}  // namespace marisim
