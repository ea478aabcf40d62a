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

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "marisim/types.hpp"

namespace marisim {

inline constexpr double kGravity = 9.81;  // m/s^2

/// Level index used for the open-ended "> 8" row of the sea-state table.
inline constexpr int kSeaStateAbove8 = 9;

/// One row of the sea-state table (North Atlantic open ocean).
struct SeaState {
  int level = 0;
  std::pair<double, double> height_range;  // crest-to-trough, m
  double height_mean = 0.0;                // m
  std::optional<std::pair<double, double>> period_range;  // s
  double period_mean = 0.0;                               // s

  /// Throws std::invalid_argument if the row violates its range invariants.
  void validate() const;
};

/// Sea-state lookup table; total over levels 0..8 and kSeaStateAbove8.
class SeaStateTable {
 public:
  SeaStateTable() = default;
  explicit SeaStateTable(std::vector<SeaState> rows);

  /// Built-in North Atlantic table.
  static const SeaStateTable& builtin();

  /// Throws std::out_of_range for a level that is not in the table.
  const SeaState& lookup(int level) const;
  const std::vector<SeaState>& rows() const { return rows_; }

 private:
  std::vector<SeaState> rows_;
};

/// Deterministic sine-wave sea surface.
struct WaveField {
  double amplitude = 0.0;   // a, m
  double wavelength = 1.0;  // l, m
  double period = 1.0;      // s
  Point2 source{-10'000.0, 0.0};

  void validate() const;
};

inline constexpr Point2 kDefaultWaveSource{-10'000.0, 0.0};

/// A buoy-mounted antenna. `phase_offset` is added to the wave phase seen by this
/// buoy (radians); it is zero for physical geometry and only used to randomize
/// relative buoy phases when estimating LoS statistics.
struct FloatingNode {
  Point2 position;
  double mast_height = 1.0;  // antenna height above the buoy, m
  double phase_offset = 0.0;
};

enum class Heave { Upwards, Downwards };

/// Deep-water dispersion relation l = g T^2 / (2 pi).
double deep_water_wavelength(double period, double g = kGravity);

/// Amplitude is half the mean crest-to-trough height; wavelength from dispersion.
WaveField wave_from_sea_state(const SeaState& state, Point2 source = kDefaultWaveSource);

/// Argument of the heave sine at the buoy, before wrapping.
double wave_phase(const FloatingNode& node, const WaveField& wave, double t);

/// Antenna height above mean sea level: a sin(phase) + h0.
double antenna_height(const FloatingNode& node, const WaveField& wave, double t);

/// Exact zero vertical velocity counts as upwards.
Heave heave_direction(const FloatingNode& node, const WaveField& wave, double t);

/// Location of the closest wave crest ahead of the buoy along the source->buoy ray.
/// Throws std::domain_error for a flat sea.
Point2 nearest_peak(const FloatingNode& node, const WaveField& wave, double t);

/// Distance from the buoy to its nearest crest, in [0, l].
double nearest_peak_shift(const FloatingNode& node, const WaveField& wave, double t);

double elevation_angle(double tx_height, double rx_height, double horizontal_distance);

/// Angle of the line from the peer antenna down to a crest of height `amplitude`.
double blocking_angle(double peer_height, double amplitude, double distance_peer_to_peak);

LinkState los_state(const FloatingNode& tx, const FloatingNode& rx, const WaveField& wave, double t);

/// Fraction of sampled instants with an unobstructed direct link. Each sample
/// draws t uniformly over one period and a uniform relative wave phase for rx.
double los_probability(const SeaState& state, const FloatingNode& tx, const FloatingNode& rx,
                       std::size_t samples, std::uint64_t seed,
                       Point2 source = kDefaultWaveSource);

}  // namespace marisim
