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

#include "marisim/sea_surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "marisim/rng.hpp"

namespace marisim {

namespace {

double positive_mod(double x, double m) {
  double r = std::fmod(x, m);
  if (r < 0.0) r += m;
  return r;
}

std::vector<SeaState> builtin_rows() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  using R = std::pair<double, double>;
  // Levels 0 and 1 share a row with no tabulated period; the shortest tabulated
  // period is used so the wave stays well-defined.
  return {
      {0, R{0.0, 0.1}, 0.05, std::nullopt, 3.0},
      {1, R{0.0, 0.1}, 0.05, std::nullopt, 3.0},
      {2, R{0.1, 0.5}, 0.3, R{3.0, 15.0}, 7.0},
      {3, R{0.5, 1.25}, 0.875, R{5.0, 15.5}, 8.0},
      {4, R{1.25, 2.5}, 1.875, R{6.0, 16.0}, 9.0},
      {5, R{2.5, 4.0}, 3.25, R{7.0, 16.5}, 10.0},
      {6, R{4.0, 6.0}, 5.0, R{9.0, 17.0}, 12.0},
      {7, R{6.0, 9.0}, 7.5, R{10.0, 18.0}, 14.0},
      {8, R{9.0, 14.0}, 11.5, R{13.0, 19.0}, 17.0},
      // "> 14 m": open-ended, mean pinned at the lower bound
      {kSeaStateAbove8, R{14.0, inf}, 14.0, R{18.0, 24.0}, 20.0},
  };
}

}  // namespace

void SeaState::validate() const {
  const auto fail = [this](const std::string& what) {
    throw std::invalid_argument("sea state " + std::to_string(level) + ": " + what);
  };
  if (!(height_range.first < height_range.second)) fail("height range must satisfy min < max");
  if (height_mean < height_range.first || height_mean > height_range.second) {
    fail("mean height outside height range");
  }
  if (!(period_mean > 0.0)) fail("mean period must be positive");
  if (period_range) {
    if (!(period_range->first < period_range->second)) fail("period range must satisfy min < max");
    if (period_mean < period_range->first || period_mean > period_range->second) {
      fail("mean period outside period range");
    }
  }
}

SeaStateTable::SeaStateTable(std::vector<SeaState> rows) : rows_(std::move(rows)) {
  for (const auto& r : rows_) r.validate();
}

const SeaStateTable& SeaStateTable::builtin() {
  static const SeaStateTable table(builtin_rows());
  return table;
}

const SeaState& SeaStateTable::lookup(int level) const {
  auto it = std::find_if(rows_.begin(), rows_.end(), [level](const SeaState& s) { return s.level == level; });
  if (it == rows_.end()) throw std::out_of_range("unknown sea state level " + std::to_string(level));
  return *it;
}

void WaveField::validate() const {
  if (!(amplitude >= 0.0)) throw std::invalid_argument("wave amplitude must be >= 0");
  if (!(wavelength > 0.0)) throw std::invalid_argument("wavelength must be > 0");
  if (!(period > 0.0)) throw std::invalid_argument("wave period must be > 0");
}

double deep_water_wavelength(double period, double g) { return g * period * period / kTwoPi; }

WaveField wave_from_sea_state(const SeaState& state, Point2 source) {
  state.validate();
  WaveField w;
  w.amplitude = state.height_mean / 2.0;
  w.period = state.period_mean;
  w.wavelength = deep_water_wavelength(state.period_mean);
  w.source = source;
  return w;
}

double wave_phase(const FloatingNode& node, const WaveField& wave, double t) {
  const double d_r = distance(node.position, wave.source);
  return kTwoPi * positive_mod(d_r, wave.wavelength) / wave.wavelength +
         kTwoPi * positive_mod(t, wave.period) / wave.period + node.phase_offset;
}

double antenna_height(const FloatingNode& node, const WaveField& wave, double t) {
  return wave.amplitude * std::sin(wave_phase(node, wave, t)) + node.mast_height;
}

Heave heave_direction(const FloatingNode& node, const WaveField& wave, double t) {
  return std::cos(wave_phase(node, wave, t)) >= 0.0 ? Heave::Upwards : Heave::Downwards;
}

double nearest_peak_shift(const FloatingNode& node, const WaveField& wave, double t) {
  const double a = wave.amplitude;
  if (!(a > 0.0)) throw std::domain_error("flat sea has no peaks");
  const double delta = antenna_height(node, wave, t) - node.mast_height;
  // clamp guards the last ulp of sin() overshooting the amplitude
  const double frac = std::clamp((a - delta) / (4.0 * a), 0.0, 0.5);
  return heave_direction(node, wave, t) == Heave::Downwards ? wave.wavelength * (1.0 - frac)
                                                             : wave.wavelength * frac;
}

Point2 nearest_peak(const FloatingNode& node, const WaveField& wave, double t) {
  const double shift = nearest_peak_shift(node, wave, t);
  const double dx = node.position.x - wave.source.x;
  const double dy = node.position.y - wave.source.y;
  const double norm = std::hypot(dx, dy);
  // a buoy sitting on the source has no ray; fall back to +x
  const double ux = norm > 0.0 ? dx / norm : 1.0;
  const double uy = norm > 0.0 ? dy / norm : 0.0;
  return {node.position.x + shift * ux, node.position.y + shift * uy};
}

double elevation_angle(double tx_height, double rx_height, double horizontal_distance) {
  if (!(horizontal_distance > 0.0)) throw std::invalid_argument("co-located nodes");
  return std::atan((rx_height - tx_height) / horizontal_distance);
}

double blocking_angle(double peer_height, double amplitude, double distance_peer_to_peak) {
  if (!(distance_peer_to_peak > 0.0)) throw std::invalid_argument("peer coincides with wave peak");
  return std::atan((peer_height - amplitude) / distance_peer_to_peak);
}

LinkState los_state(const FloatingNode& tx, const FloatingNode& rx, const WaveField& wave, double t) {
  const double d = distance(tx.position, rx.position);
  if (!(d > 0.0)) throw std::invalid_argument("co-located nodes");
  if (!(wave.amplitude > 0.0)) return LinkState::LoS;

  const double a = wave.amplitude;
  const double h_t = antenna_height(tx, wave, t);
  const double h_r = antenna_height(rx, wave, t);

  const double phi_t = elevation_angle(h_t, h_r, d);
  const double phi_r = elevation_angle(h_r, h_t, d);

  // atan2 keeps a crest sitting exactly under the peer well-defined (+-pi/2)
  const double psi_t = std::atan2(h_r - a, distance(rx.position, nearest_peak(tx, wave, t)));
  const double psi_r = std::atan2(h_t - a, distance(tx.position, nearest_peak(rx, wave, t)));

  return (phi_t <= psi_t && phi_r <= psi_r) ? LinkState::LoS : LinkState::NLoS;
}

double los_probability(const SeaState& state, const FloatingNode& tx, const FloatingNode& rx,
                       std::size_t samples, std::uint64_t seed, Point2 source) {
  if (samples == 0) throw std::invalid_argument("los_probability needs at least one sample");
  const WaveField wave = wave_from_sea_state(state, source);
  if (!(wave.amplitude > 0.0)) return 1.0;

  Rng rng(seed);
  std::size_t los = 0;
  FloatingNode rx_s = rx;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = rng.uniform(0.0, wave.period);
    rx_s.phase_offset = rx.phase_offset + rng.uniform(0.0, kTwoPi);
    if (los_state(tx, rx_s, wave, t) == LinkState::LoS) ++los;
  }
  return static_cast<double>(los) / static_cast<double>(samples);
}

}  // namespace marisim
