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

#include <cmath>

#include "marisim/rng.hpp"
#include "marisim/sea_surface.hpp"
#include "oracles/oracles.hpp"

using namespace marisim;

namespace {

WaveField wave(double a, double l, double T) {
  WaveField w;
  w.amplitude = a;
  w.wavelength = l;
  w.period = T;
  w.source = {0.0, 0.0};
  return w;
}

// Re-derivation of the crest geometry from the model description.
LinkState los_reference(const FloatingNode& tx, const FloatingNode& rx, const WaveField& w, double t) {
  if (w.amplitude == 0.0) return LinkState::LoS;
  auto height = [&](const FloatingNode& n) {
    const double dr = std::hypot(n.position.x - w.source.x, n.position.y - w.source.y);
    return oracle::sea_height(w.amplitude, w.wavelength, w.period, dr, t, n.mast_height);
  };
  auto peak = [&](const FloatingNode& n) {
    const double dr = std::hypot(n.position.x - w.source.x, n.position.y - w.source.y);
    const double ph = 2 * oracle::kPi * std::fmod(dr, w.wavelength) / w.wavelength +
                      2 * oracle::kPi * std::fmod(t, w.period) / w.period;
    const double delta = height(n) - n.mast_height;
    double frac = (w.amplitude - delta) / (4 * w.amplitude);
    frac = std::min(std::max(frac, 0.0), 0.5);
    const double shift = std::cos(ph) >= 0 ? w.wavelength * frac : w.wavelength * (1 - frac);
    return Point2{n.position.x + shift * (n.position.x - w.source.x) / dr,
                  n.position.y + shift * (n.position.y - w.source.y) / dr};
  };
  const double ht = height(tx), hr = height(rx);
  const double d = distance(tx.position, rx.position);
  const double phi_t = std::atan((hr - ht) / d);
  const double psi_t = std::atan2(hr - w.amplitude, distance(rx.position, peak(tx)));
  const double psi_r = std::atan2(ht - w.amplitude, distance(tx.position, peak(rx)));
  return (phi_t <= psi_t && -phi_t <= psi_r) ? LinkState::LoS : LinkState::NLoS;
}

}  // namespace

TEST(SeaStateTable, RowsSatisfyRangeInvariants) {
  for (const SeaState& s : SeaStateTable::builtin().rows()) {
    EXPECT_LT(s.height_range.first, s.height_range.second) << s.level;
    EXPECT_GE(s.height_mean, s.height_range.first);
    EXPECT_LE(s.height_mean, s.height_range.second);
    if (s.period_range) {
      EXPECT_GE(s.period_mean, s.period_range->first);
      EXPECT_LE(s.period_mean, s.period_range->second);
    }
  }
}

TEST(SeaStateTable, LookupIsTotalOverLevels) {
  for (int lvl = 0; lvl <= 8; ++lvl) EXPECT_NO_THROW(SeaStateTable::builtin().lookup(lvl));
  EXPECT_NO_THROW(SeaStateTable::builtin().lookup(kSeaStateAbove8));
  EXPECT_THROW(SeaStateTable::builtin().lookup(42), std::out_of_range);
}

TEST(SeaStateTable, TabulatedRows) {
  struct Row {
    int level;
    double hmin, hmax, hmean, pmin, pmax, pmean;
  };
  const Row rows[] = {{2, 0.1, 0.5, 0.3, 3, 15, 7},       {3, 0.5, 1.25, 0.875, 5, 15.5, 8},
                      {4, 1.25, 2.5, 1.875, 6, 16, 9},    {5, 2.5, 4.0, 3.25, 7, 16.5, 10},
                      {6, 4.0, 6.0, 5.0, 9, 17, 12},      {7, 6.0, 9.0, 7.5, 10, 18, 14},
                      {8, 9.0, 14.0, 11.5, 13, 19, 17}};
  for (const Row& r : rows) {
    const SeaState& s = SeaStateTable::builtin().lookup(r.level);
    EXPECT_DOUBLE_EQ(s.height_range.first, r.hmin);
    EXPECT_DOUBLE_EQ(s.height_range.second, r.hmax);
    EXPECT_DOUBLE_EQ(s.height_mean, r.hmean);
    ASSERT_TRUE(s.period_range);
    EXPECT_DOUBLE_EQ(s.period_range->first, r.pmin);
    EXPECT_DOUBLE_EQ(s.period_range->second, r.pmax);
    EXPECT_DOUBLE_EQ(s.period_mean, r.pmean);
  }
}

TEST(SeaStateTable, RejectsInvalidRow) {
  SeaState bad{3, {1.0, 0.5}, 0.7, std::nullopt, 5.0};
  EXPECT_THROW(SeaStateTable({bad}), std::invalid_argument);
}

TEST(WaveFromSeaState, State4) {
  const WaveField w = wave_from_sea_state(SeaStateTable::builtin().lookup(4));
  EXPECT_DOUBLE_EQ(w.period, 9.0);
  EXPECT_DOUBLE_EQ(w.amplitude, 0.9375);
  EXPECT_NEAR(w.wavelength, 9.81 * 81.0 / (2 * oracle::kPi), 1e-12);
  EXPECT_NEAR(w.wavelength, 126.5, 0.05);
}

TEST(WaveFromSeaState, ZeroHeightGivesFlatSea) {
  SeaState s{0, {0.0, 0.1}, 0.0, std::nullopt, 3.0};
  EXPECT_EQ(wave_from_sea_state(s).amplitude, 0.0);
}

TEST(AntennaHeight, Examples) {
  const WaveField flat = wave(0.0, 100.0, 10.0);
  EXPECT_EQ(antenna_height({{30, 40}, 4.0}, flat, 3.3), 4.0);
  const WaveField w = wave(1.0, 100.0, 10.0);
  EXPECT_NEAR(antenna_height({{0, 0}, 5.0}, w, 0.0), 5.0, 1e-15);
  EXPECT_NEAR(antenna_height({{25, 0}, 5.0}, w, 0.0), 6.0, 1e-15);
}

TEST(AntennaHeight, PeriodicAndBounded) {
  Rng rng(11);
  for (int k = 0; k < 2000; ++k) {
    const WaveField w = wave(rng.uniform(0.01, 5.0), rng.uniform(5.0, 300.0), rng.uniform(2.0, 20.0));
    const FloatingNode n{{rng.uniform(-500, 500), rng.uniform(-500, 500)}, rng.uniform(0.5, 30.0)};
    const double t = rng.uniform(0.0, 50.0);
    const double h = antenna_height(n, w, t);
    ASSERT_GE(h, n.mast_height - w.amplitude - 1e-12);
    ASSERT_LE(h, n.mast_height + w.amplitude + 1e-12);
    EXPECT_NEAR(antenna_height(n, w, t + w.period), h, 1e-9);
    const double dr = std::hypot(n.position.x, n.position.y);
    EXPECT_NEAR(h, oracle::sea_height(w.amplitude, w.wavelength, w.period, dr, t, n.mast_height), 1e-9);
    // one wavelength further from the source along the same ray
    const double s = (dr + w.wavelength) / dr;
    const FloatingNode far{{n.position.x * s, n.position.y * s}, n.mast_height};
    EXPECT_NEAR(antenna_height(far, w, t), h, 1e-7);
  }
}

TEST(HeaveDirection, Examples) {
  const WaveField w = wave(1.0, 100.0, 10.0);
  EXPECT_EQ(heave_direction({{0, 0}, 1.0}, w, 0.0), Heave::Upwards);    // phase 0
  EXPECT_EQ(heave_direction({{50, 0}, 1.0}, w, 0.0), Heave::Downwards);  // phase pi
  EXPECT_EQ(heave_direction({{25, 0}, 1.0}, w, 0.0), Heave::Upwards);    // phase pi/2, at the crest
  EXPECT_EQ(heave_direction({{80, 0}, 1.0}, w, 0.0), Heave::Upwards);    // phase 1.6 pi, rising out of the trough
}

TEST(NearestPeak, ShiftExamples) {
  const WaveField w = wave(2.0, 80.0, 10.0);
  FloatingNode n{{10, 0}, 3.0};
  // crest: delta = a, upwards (phase pi/2 - tiny)
  n.phase_offset = oracle::kPi / 2 - 2 * oracle::kPi * 10 / 80 - 1e-9;
  EXPECT_NEAR(nearest_peak_shift(n, w, 0.0), 0.0, 1e-6);
  const Point2 p = nearest_peak(n, w, 0.0);
  EXPECT_NEAR(p.x, 10.0, 1e-5);
  // trough: delta = -a, upwards (phase 3pi/2 + tiny)
  n.phase_offset = 3 * oracle::kPi / 2 - 2 * oracle::kPi * 10 / 80 + 1e-9;
  EXPECT_NEAR(nearest_peak_shift(n, w, 0.0), 40.0, 1e-6);
  // zero displacement moving down (phase pi): 0.75 l
  n.phase_offset = oracle::kPi - 2 * oracle::kPi * 10 / 80;
  EXPECT_NEAR(nearest_peak_shift(n, w, 0.0), 60.0, 1e-9);
}

TEST(NearestPeak, ShiftWithinWavelength) {
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    const WaveField w = wave(rng.uniform(0.01, 5.0), rng.uniform(5.0, 300.0), rng.uniform(2.0, 20.0));
    const FloatingNode n{{rng.uniform(-500, 500), rng.uniform(-500, 500)}, rng.uniform(0.5, 30.0)};
    const double s = nearest_peak_shift(n, w, rng.uniform(0.0, 50.0));
    ASSERT_GE(s, 0.0);
    ASSERT_LE(s, w.wavelength);
  }
}

TEST(NearestPeak, FlatSeaThrows) {
  EXPECT_THROW(nearest_peak({{1, 1}, 1.0}, wave(0.0, 10.0, 5.0), 0.0), std::domain_error);
}

TEST(Angles, Elevation) {
  EXPECT_EQ(elevation_angle(3.0, 3.0, 100.0), 0.0);
  EXPECT_NEAR(elevation_angle(1.0, 11.0, 10.0), oracle::kPi / 4, 1e-15);
  EXPECT_NEAR(elevation_angle(2.0, 5.0, 200.0), std::atan(0.015), 1e-15);
  EXPECT_NEAR(elevation_angle(2.0, 5.0, 200.0), 0.0150, 5e-5);
  EXPECT_DOUBLE_EQ(elevation_angle(5.0, 2.0, 200.0), -elevation_angle(2.0, 5.0, 200.0));
  EXPECT_THROW(elevation_angle(1.0, 2.0, 0.0), std::invalid_argument);
}

TEST(Angles, Blocking) {
  EXPECT_EQ(blocking_angle(1.5, 1.5, 20.0), 0.0);
  EXPECT_NEAR(blocking_angle(21.5, 1.5, 20.0), oracle::kPi / 4, 1e-15);
  EXPECT_NEAR(blocking_angle(6.0, 1.0, 75.0), 0.0666, 5e-5);
  EXPECT_LT(blocking_angle(0.5, 1.0, 75.0), 0.0);
  EXPECT_THROW(blocking_angle(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST(LosState, FlatSeaAlwaysLos) {
  Rng rng(3);
  const WaveField w = wave(0.0, 50.0, 5.0);
  for (int k = 0; k < 200; ++k) {
    const FloatingNode a{{rng.uniform(-100, 100), rng.uniform(-100, 100)}, rng.uniform(0.1, 3)};
    const FloatingNode b{{rng.uniform(200, 300), rng.uniform(-100, 100)}, rng.uniform(0.1, 3)};
    EXPECT_EQ(los_state(a, b, w, rng.uniform(0, 10)), LinkState::LoS);
  }
}

TEST(LosState, TallMastsOverRippleAreLos) {
  const WaveField w = wave(0.05, 30.0, 3.0);
  for (double t = 0.0; t < 3.0; t += 0.1) {
    EXPECT_EQ(los_state({{1000, 0}, 30.0}, {{1200, 0}, 30.0}, w, t), LinkState::LoS);
  }
}

TEST(LosState, SymmetricAndMatchesReference) {
  Rng rng(17);
  std::size_t nlos = 0;
  for (int k = 0; k < 5000; ++k) {
    WaveField w = wave(rng.uniform(0.1, 6.0), rng.uniform(20.0, 400.0), rng.uniform(3.0, 20.0));
    w.source = {-10000.0, 0.0};
    const FloatingNode a{{rng.uniform(-300, 300), rng.uniform(-300, 300)}, rng.uniform(0.5, 10.0)};
    const FloatingNode b{{rng.uniform(-300, 300), rng.uniform(-300, 300)}, rng.uniform(0.5, 10.0)};
    const double t = rng.uniform(0.0, 40.0);
    const LinkState s = los_state(a, b, w, t);
    ASSERT_EQ(s, los_state(b, a, w, t));
    ASSERT_EQ(s, los_reference(a, b, w, t)) << k;
    nlos += s == LinkState::NLoS;
  }
  EXPECT_GT(nlos, 100u);  // both outcomes exercised
}

TEST(LosState, CoLocatedThrows) {
  EXPECT_THROW(los_state({{1, 1}, 2.0}, {{1, 1}, 3.0}, wave(1.0, 50.0, 5.0), 0.0), std::invalid_argument);
}

TEST(LosProbability, CalmSeaLowMastsAlwaysConnected) {
  const double p = los_probability(SeaStateTable::builtin().lookup(3), {{0, 0}, 2.0}, {{1000, 0}, 2.0}, 10000, 1);
  EXPECT_GE(p, 0.99);
}

TEST(LosProbability, RoughSeaTallMastStillBlocked) {
  for (int s : {7, 8, kSeaStateAbove8}) {
    const double p = los_probability(SeaStateTable::builtin().lookup(s), {{0, 0}, 2.0}, {{1000, 0}, 30.0}, 10000, 1);
    EXPECT_LT(p, 1.0) << s;
  }
}

TEST(LosProbability, FlatSeaIsExactlyOne) {
  SeaState flat{0, {0.0, 0.1}, 0.0, std::nullopt, 3.0};
  EXPECT_EQ(los_probability(flat, {{0, 0}, 1.0}, {{10, 0}, 1.0}, 100, 9), 1.0);
}

TEST(LosProbability, MonotoneInReceiverMast) {
  for (int s = 2; s <= 8; ++s) {
    double prev = 0.0;
    for (double h : {2.0, 5.0, 10.0, 20.0, 30.0}) {
      const double p = los_probability(SeaStateTable::builtin().lookup(s), {{0, 0}, 2.0}, {{1000, 0}, h}, 4000, 7);
      EXPECT_GE(p, prev) << "state " << s << " h " << h;
      prev = p;
    }
  }
}

TEST(LosProbability, DeterministicAndValidated) {
  const SeaState& s = SeaStateTable::builtin().lookup(6);
  EXPECT_EQ(los_probability(s, {{0, 0}, 2.0}, {{500, 0}, 5.0}, 500, 3),
            los_probability(s, {{0, 0}, 2.0}, {{500, 0}, 5.0}, 500, 3));
  EXPECT_THROW(los_probability(s, {{0, 0}, 2.0}, {{500, 0}, 5.0}, 0, 3), std::invalid_argument);
}
