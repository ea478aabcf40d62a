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

#include "marisim/energy.hpp"
#include "marisim/sea_surface.hpp"
#include "oracles/oracles.hpp"

using namespace marisim;

TEST(WavePower, Examples) {
  const WecParams p;
  EXPECT_EQ(wave_power_per_meter(0.0, 10.0, p), 0.0);
  EXPECT_NEAR(wave_power_per_meter(1.0, 10.0, p), oracle::wave_power(1.0, 10.0), 1e-9);
  EXPECT_NEAR(wave_power_per_meter(1.0, 10.0, p) / 1000.0, 4.906, 5e-4);
  EXPECT_THROW(wave_power_per_meter(-1.0, 10.0, p), std::invalid_argument);
  EXPECT_THROW(wave_power_per_meter(1.0, 0.0, p), std::invalid_argument);
}

TEST(WavePower, QuadraticInAmplitudeLinearInPeriod) {
  const WecParams p;
  EXPECT_NEAR(wave_power_per_meter(2.0, 7.0, p), 4.0 * wave_power_per_meter(1.0, 7.0, p), 1e-9);
  EXPECT_NEAR(wave_power_per_meter(1.3, 14.0, p), 2.0 * wave_power_per_meter(1.3, 7.0, p), 1e-9);
}

TEST(Harvested, Examples) {
  WecParams p;
  EXPECT_NEAR(p.wave_to_wire(), 0.0369, 1e-12);
  const double h = harvested_power(1.0, 10.0, p);
  EXPECT_NEAR(h, oracle::harvested(1.0, 10.0, 0.5, 0.9, 0.082, 2.0), 1e-9 * h);
  EXPECT_NEAR(h, 362.0, 0.5);
  p.eta_conv = 0.0;
  EXPECT_EQ(harvested_power(1.0, 10.0, p), 0.0);
}

TEST(Harvested, SeaState4MatchesOracle) {
  const WaveField w = wave_from_sea_state(SeaStateTable::builtin().lookup(4));
  const double h = harvested_power(w.amplitude, w.period, WecParams{});
  const double ref = oracle::harvested(1.875 / 2.0, 9.0, 0.5, 0.9, 0.082, 2.0);
  EXPECT_LE(std::abs(h - ref), 1e-9 * ref);
}

TEST(AvailablePower, Examples) {
  WecParams p;
  p.p0_w = 10.0;
  p.p_max_w = 100.0;
  EXPECT_EQ(available_tx_power(362.0, p), 100.0);
  EXPECT_EQ(available_tx_power(10.0, p), 0.0);
  EXPECT_EQ(available_tx_power(3.0, p), 0.0);
  EXPECT_EQ(available_tx_power(50.0, p), 40.0);
}

TEST(AvailablePower, WithinBudget) {
  WecParams p;
  for (double e = 0.0; e < 500.0; e += 3.7) {
    const double tx = available_tx_power(e, p);
    EXPECT_GE(tx, 0.0);
    EXPECT_LE(tx, p.p_max_w);
    EXPECT_LE(tx + p.p0_w, std::max(e, p.p0_w) + 1e-12);
  }
}

TEST(Units, DbwRoundTrip) {
  EXPECT_DOUBLE_EQ(dbw_to_watts(20.0), 100.0);
  EXPECT_NEAR(watts_to_dbw(dbw_to_watts(-131.0)), -131.0, 1e-12);
}

TEST(WecParams, Validation) {
  WecParams p;
  EXPECT_NO_THROW(p.validate());
  p.gamma_cwr = 1.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = WecParams{};
  p.p_max_w = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}
