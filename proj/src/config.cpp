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

#include "marisim/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <type_traits>

#include "json.hpp"
#include "marisim/energy.hpp"

namespace marisim {

namespace {

using json = nlohmann::json;

/// Walks one JSON object, handing out keys and remembering which were consumed.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(label() + " must be an object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    if (const json* v = take(key)) out = convert<T>(*v, key);
  }

  /// Reads `<stem>_w` or `<stem>_dbw` into watts.
  void read_watts(const std::string& stem, double& out) {
    const json* w = take((stem + "_w").c_str());
    const json* dbw = take((stem + "_dbw").c_str());
    if (w && dbw) throw ConfigError(label() + ": give either " + stem + "_w or " + stem + "_dbw, not both");
    if (w) out = convert<double>(*w, (stem + "_w").c_str());
    if (dbw) out = dbw_to_watts(convert<double>(*dbw, (stem + "_dbw").c_str()));
  }

  const json* child(const char* key) { return take(key); }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!used_.count(it.key())) throw ConfigError("unknown key '" + qualified(it.key()) + "'");
    }
  }

  std::string qualified(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  std::string label() const { return path_.empty() ? "config" : path_; }

  const json* take(const char* key) {
    used_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  template <typename T>
  T convert(const json& v, const char* key) const {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) throw ConfigError("'" + qualified(key) + "' must be a number");
      return v.get<double>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError("'" + qualified(key) + "' must be a string");
      return v.get<std::string>();
    } else if constexpr (std::is_same_v<T, int>) {
      if (!v.is_number_integer()) throw ConfigError("'" + qualified(key) + "' must be an integer");
      return v.get<int>();
    } else {
      if (!v.is_number_unsigned()) throw ConfigError("'" + qualified(key) + "' must be a non-negative integer");
      return v.get<T>();
    }
  }

  const json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

SeaState parse_sea_row(const json& row, std::size_t idx) {
  Section s(row, "sea_state_table[" + std::to_string(idx) + "]");
  SeaState st;
  s.read("level", st.level);
  s.read("height_min_m", st.height_range.first);
  // null marks an open-ended row
  if (const json* hmax = s.child("height_max_m")) {
    if (hmax->is_null()) {
      st.height_range.second = std::numeric_limits<double>::infinity();
    } else if (hmax->is_number()) {
      st.height_range.second = hmax->get<double>();
    } else {
      throw ConfigError("'" + s.qualified("height_max_m") + "' must be a number or null");
    }
  } else {
    throw ConfigError("'" + s.qualified("height_max_m") + "' is required");
  }
  s.read("height_mean_m", st.height_mean);
  std::optional<double> pmin, pmax;
  if (const json* v = s.child("period_min_s")) {
    if (!v->is_number()) throw ConfigError("'" + s.qualified("period_min_s") + "' must be a number");
    pmin = v->get<double>();
  }
  if (const json* v = s.child("period_max_s")) {
    if (!v->is_number()) throw ConfigError("'" + s.qualified("period_max_s") + "' must be a number");
    pmax = v->get<double>();
  }
  if (pmin.has_value() != pmax.has_value()) throw ConfigError("period_min_s and period_max_s go together");
  if (pmin) st.period_range = std::make_pair(*pmin, *pmax);
  s.read("period_mean_s", st.period_mean);
  s.finish();
  return st;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  ScenarioConfig cfg;
  Section top(doc, "");
  top.read("sea_state", cfg.sea_state);
  top.read("seed", cfg.seed);
  top.read("threads", cfg.threads);
  top.read("interval_s", cfg.interval_s);

  if (const json* g = top.child("geometry")) {
    Section s(*g, "geometry");
    GeometryConfig& geo = cfg.geometry;
    s.read("turbine_x_m", geo.turbine.x);
    s.read("turbine_y_m", geo.turbine.y);
    s.read("ris_height_m", geo.ris_height);
    s.read("turbine_diameter_m", geo.turbine_diameter);
    s.read("rx_distance_m", geo.rx_distance);
    s.read("deployment_radius_m", geo.deployment_radius);
    s.read("mean_iot_count", geo.mean_iot_count);
    s.read("iot_mast_height_m", geo.iot_mast_height);
    s.read("rx_mast_height_m", geo.rx_mast_height);
    s.read("wave_source_x_m", geo.wave_source.x);
    s.read("wave_source_y_m", geo.wave_source.y);
    s.finish();
  }

  if (const json* r = top.child("radio")) {
    Section s(*r, "radio");
    RadioConfig& radio = cfg.radio;
    PathLossParams& pl = radio.path_loss;
    s.read("carrier_hz", pl.carrier_hz);
    s.read("duct_height_m", pl.duct_height);
    s.read("nlos_intercept_db", pl.nlos_intercept_db);
    s.read("nlos_exponent", pl.nlos_exponent);
    s.read("reference_distance_m", pl.reference_distance);
    s.read("sigma_los_db", pl.sigma_los_db);
    s.read("sigma_nlos_db", pl.sigma_nlos_db);
    s.read("tx_gain_db", pl.tx_gain_db);
    s.read("rx_gain_db", pl.rx_gain_db);
    s.read("rx_antennas", radio.rx_antennas);
    s.read("ris_elements", radio.ris_elements);
    s.read_watts("noise_power", radio.noise_power_w);
    s.read("bandwidth_hz", radio.bandwidth_hz);
    s.finish();
  }

  if (const json* e = top.child("energy")) {
    Section s(*e, "energy");
    WecParams& w = cfg.energy;
    s.read("eta_pto", w.eta_pto);
    s.read("eta_conv", w.eta_conv);
    s.read("gamma_cwr", w.gamma_cwr);
    s.read("width_m", w.width);
    s.read("rho_kg_m3", w.rho);
    s.read("g_m_s2", w.g);
    s.read_watts("p0", w.p0_w);
    s.read_watts("p_max", w.p_max_w);
    s.finish();
  }

  if (const json* e = top.child("estimation")) {
    Section s(*e, "estimation");
    s.read("subframes", cfg.estimation.subframes);
    s.read("pilot_length", cfg.estimation.pilot_length);
    std::string mode = to_string(cfg.estimation.mode);
    s.read("mode", mode);
    cfg.estimation.mode = parse_csi_mode(mode);
    s.finish();
  }

  if (const json* o = top.child("optimizer")) {
    Section s(*o, "optimizer");
    s.read("sdp_tol", cfg.optimizer.sdp.tol);
    s.read("sdp_max_iter", cfg.optimizer.sdp.max_iter);
    std::string method = to_string(cfg.optimizer.sdp.method);
    s.read("sdp_method", method);
    cfg.optimizer.sdp.method = parse_sdp_method(method);
    s.read("randomization_draws", cfg.optimizer.randomization_draws);
    s.read("debug_dump_path", cfg.optimizer.debug_dump_path);
    s.finish();
  }

  if (const json* t = top.child("sea_state_table")) {
    if (!t->is_array() || t->empty()) throw ConfigError("'sea_state_table' must be a non-empty array");
    std::vector<SeaState> rows;
    std::set<int> levels;
    for (std::size_t i = 0; i < t->size(); ++i) {
      rows.push_back(parse_sea_row((*t)[i], i));
      if (!levels.insert(rows.back().level).second) {
        throw ConfigError("sea_state_table lists level " + std::to_string(rows.back().level) + " twice");
      }
    }
    try {
      cfg.sea_states = SeaStateTable(std::move(rows));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  top.finish();
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string dump_config(const ScenarioConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["sea_state"] = cfg.sea_state;
  doc["seed"] = cfg.seed;
  doc["threads"] = cfg.threads;
  doc["interval_s"] = cfg.interval_s;
  const GeometryConfig& g = cfg.geometry;
  doc["geometry"] = {{"turbine_x_m", g.turbine.x},
                     {"turbine_y_m", g.turbine.y},
                     {"ris_height_m", g.ris_height},
                     {"turbine_diameter_m", g.turbine_diameter},
                     {"rx_distance_m", g.rx_distance},
                     {"deployment_radius_m", g.deployment_radius},
                     {"mean_iot_count", g.mean_iot_count},
                     {"iot_mast_height_m", g.iot_mast_height},
                     {"rx_mast_height_m", g.rx_mast_height},
                     {"wave_source_x_m", g.wave_source.x},
                     {"wave_source_y_m", g.wave_source.y}};
  const PathLossParams& pl = cfg.radio.path_loss;
  doc["radio"] = {{"carrier_hz", pl.carrier_hz},
                  {"duct_height_m", pl.duct_height},
                  {"nlos_intercept_db", pl.nlos_intercept_db},
                  {"nlos_exponent", pl.nlos_exponent},
                  {"reference_distance_m", pl.reference_distance},
                  {"sigma_los_db", pl.sigma_los_db},
                  {"sigma_nlos_db", pl.sigma_nlos_db},
                  {"tx_gain_db", pl.tx_gain_db},
                  {"rx_gain_db", pl.rx_gain_db},
                  {"rx_antennas", cfg.radio.rx_antennas},
                  {"ris_elements", cfg.radio.ris_elements},
                  {"noise_power_w", cfg.radio.noise_power_w},
                  {"bandwidth_hz", cfg.radio.bandwidth_hz}};
  const WecParams& w = cfg.energy;
  doc["energy"] = {{"eta_pto", w.eta_pto},     {"eta_conv", w.eta_conv}, {"gamma_cwr", w.gamma_cwr},
                   {"width_m", w.width},       {"rho_kg_m3", w.rho},     {"g_m_s2", w.g},
                   {"p0_w", w.p0_w},           {"p_max_w", w.p_max_w}};
  doc["estimation"] = {{"subframes", cfg.estimation.subframes},
                       {"pilot_length", cfg.estimation.pilot_length},
                       {"mode", to_string(cfg.estimation.mode)}};
  doc["optimizer"] = {{"sdp_tol", cfg.optimizer.sdp.tol},
                      {"sdp_max_iter", cfg.optimizer.sdp.max_iter},
                      {"sdp_method", to_string(cfg.optimizer.sdp.method)},
                      {"randomization_draws", cfg.optimizer.randomization_draws},
                      {"debug_dump_path", cfg.optimizer.debug_dump_path}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SeaState& s : cfg.sea_states.rows()) {
    nlohmann::ordered_json row{{"level", s.level}, {"height_min_m", s.height_range.first}};
    if (std::isinf(s.height_range.second)) {
      row["height_max_m"] = nullptr;
    } else {
      row["height_max_m"] = s.height_range.second;
    }
    row["height_mean_m"] = s.height_mean;
    if (s.period_range) {
      row["period_min_s"] = s.period_range->first;
      row["period_max_s"] = s.period_range->second;
    }
    row["period_mean_s"] = s.period_mean;
    rows.push_back(row);
  }
  doc["sea_state_table"] = rows;
  return doc.dump(2) + "\n";
}

}  // namespace marisim
