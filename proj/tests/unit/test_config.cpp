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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "marisim/config.hpp"
#include "marisim/snapshot_io.hpp"
#include "snapshot_fixtures.hpp"

using namespace marisim;

TEST(ParseConfig, EmptyDocumentGivesDefaults) {
  const ScenarioConfig cfg = parse_config("{}");
  const ScenarioConfig def;
  EXPECT_EQ(cfg.sea_state, def.sea_state);
  EXPECT_EQ(cfg.radio.ris_elements, def.radio.ris_elements);
  EXPECT_EQ(cfg.radio.noise_power_w, def.radio.noise_power_w);
  EXPECT_EQ(cfg.optimizer.sdp.method, SdpMethod::LowRank);
  EXPECT_EQ(dump_config(cfg), dump_config(def));
}

TEST(ParseConfig, ReadsSections) {
  const ScenarioConfig cfg = parse_config(R"({
    "sea_state": 6, "seed": 42, "threads": 3,
    "geometry": {"rx_mast_height_m": 10, "ris_height_m": 40},
    "radio": {"ris_elements": 64, "rx_antennas": 4, "noise_power_dbw": -120},
    "energy": {"p_max_dbw": 10},
    "estimation": {"mode": "noiseless"},
    "optimizer": {"sdp_method": "admm", "randomization_draws": 7}
  })");
  EXPECT_EQ(cfg.sea_state, 6);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.threads, 3u);
  EXPECT_EQ(cfg.geometry.rx_mast_height, 10.0);
  EXPECT_EQ(cfg.radio.ris_elements, 64u);
  EXPECT_NEAR(cfg.radio.noise_power_w, 1e-12, 1e-24);
  EXPECT_NEAR(cfg.energy.p_max_w, 10.0, 1e-12);
  EXPECT_EQ(cfg.estimation.mode, CsiMode::Noiseless);
  EXPECT_EQ(cfg.optimizer.sdp.method, SdpMethod::Admm);
  EXPECT_EQ(cfg.optimizer.randomization_draws, 7u);
}

TEST(ParseConfig, DumpRoundTrip) {
  ScenarioConfig cfg;
  cfg.sea_state = 7;
  cfg.radio.ris_elements = 120;
  cfg.energy.p_max_w = 0.1 + 0.2;
  cfg.optimizer.sdp.method = SdpMethod::Admm;
  cfg.estimation.mode = CsiMode::Perfect;
  const std::string text = dump_config(cfg);
  EXPECT_EQ(dump_config(parse_config(text)), text);
  EXPECT_EQ(parse_config(text).energy.p_max_w, 0.1 + 0.2);
}

TEST(ParseConfig, CustomSeaStateTable) {
  const ScenarioConfig cfg = parse_config(R"({
    "sea_state": 3,
    "sea_state_table": [
      {"level": 3, "height_min_m": 1, "height_max_m": null, "height_mean_m": 2, "period_mean_s": 6}
    ]
  })");
  EXPECT_EQ(cfg.sea_states.lookup(3).height_mean, 2.0);
  EXPECT_TRUE(std::isinf(cfg.sea_states.lookup(3).height_range.second));
  EXPECT_THROW(cfg.sea_states.lookup(4), std::out_of_range);
}

TEST(ParseConfig, Errors) {
  const char* bad[] = {
      R"({"sea_stat": 4})",
      R"({"radio": {"ris_elements": -3}})",
      R"({"radio": {"ris_elements": "many"}})",
      R"({"energy": {"p_max_w": 10, "p_max_dbw": 10}})",
      R"({"geometry": {"ris_height_m": 5}})",
      R"({"estimation": {"mode": "psychic"}})",
      R"({"optimizer": {"sdp_method": "simplex"}})",
      R"({"sea_state_table": [{"level": 4, "height_min_m": 1, "height_max_m": 2, "height_mean_m": 1.5, "period_mean_s": 5},
                              {"level": 4, "height_min_m": 1, "height_max_m": 2, "height_mean_m": 1.5, "period_mean_s": 5}]})",
      R"({"sea_state_table": [{"level": 4, "height_min_m": 2, "height_max_m": 1, "height_mean_m": 1.5, "period_mean_s": 5}]})",
      R"([1, 2])",
      R"({not json)",
  };
  for (const char* text : bad) EXPECT_THROW(parse_config(text), ConfigError) << text;
}

TEST(LoadConfig, FileErrorsNamePath) {
  try {
    load_config("/nonexistent/scenario.json");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/scenario.json"), std::string::npos);
  }
  const std::string path = ::testing::TempDir() + "cfg.json";
  {
    std::ofstream out(path);
    out << R"({"sea_state": 5})";
  }
  EXPECT_EQ(load_config(path).sea_state, 5);
  std::remove(path.c_str());
}

TEST(Snapshot, JsonRoundTripIsExact) {
  Rng rng(31);
  const NetworkSnapshot s = fixtures::random_snapshot(5, 3, 2, rng, 1e-13, 5e6);
  const NetworkSnapshot back = snapshot_from_json(snapshot_to_json(s));
  EXPECT_EQ(back.Hd, s.Hd);
  ASSERT_EQ(back.G.size(), 2u);
  EXPECT_EQ(back.G[1], s.G[1]);
  EXPECT_EQ(back.tx_power, s.tx_power);
  EXPECT_EQ(back.noise_power, s.noise_power);

  const std::string path = ::testing::TempDir() + "snap.json";
  save_snapshot(s, path);
  EXPECT_EQ(load_snapshot(path).G[0], s.G[0]);
  std::remove(path.c_str());
}

TEST(Snapshot, Errors) {
  EXPECT_THROW(snapshot_from_json("{\"extra\": 1}"), ConfigError);
  EXPECT_THROW(snapshot_from_json("[]"), ConfigError);
  EXPECT_THROW(snapshot_from_json(R"({"noise_power_w": 1, "bandwidth_hz": 1, "tx_power_w": [1],
                                      "Hd": [[[1, 0]]], "G": [[[[1]]]]})"),
               ConfigError);
  EXPECT_THROW(snapshot_from_json(R"({"noise_power_w": 1, "bandwidth_hz": 1, "tx_power_w": [1, 2],
                                      "Hd": [[[1, 0]]], "G": [[[[1, 0]]]]})"),
               ConfigError);
  EXPECT_THROW(load_snapshot("/nonexistent/snap.json"), ConfigError);
}
