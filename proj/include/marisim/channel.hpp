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

#include <cstddef>
#include <vector>

#include "marisim/rng.hpp"
#include "marisim/sea_surface.hpp"
#include "marisim/types.hpp"

namespace marisim {

/// Propagation parameters shared by every link. Defaults are the 5.8 GHz
/// maritime buoy measurement values.
struct PathLossParams {
  double carrier_hz = 5.8e9;
  double duct_height = 50.0;        // effective evaporation-duct height h_e, m
  double nlos_intercept_db = 130.6;  // K
  double nlos_exponent = 2.1;        // alpha
  double reference_distance = 1.0;   // d_0, m
  double sigma_los_db = 3.5;
  double sigma_nlos_db = 5.1;
  double tx_gain_db = 0.0;
  double rx_gain_db = 5.0;

  double wavelength() const { return kSpeedOfLight / carrier_hz; }
  void validate() const;
};

struct LinkGeometry {
  double tx_height = 0.0;  // m above the reflecting surface
  double rx_height = 0.0;
  double distance = 0.0;  // horizontal, m
  LinkState state = LinkState::LoS;
};

struct ComplexGain {
  double amplitude = 0.0;  // linear field gain
  double phase = 0.0;      // [0, 2 pi)

  cdouble value() const { return std::polar(amplitude, phase); }
};

/// A path loss in dB. `clamped` marks an exact two-ray/three-ray null whose log
/// argument was floored.
struct PathLoss {
  double db = 0.0;
  bool clamped = false;
};

/// Floor applied to |log argument| of the LoS formula (~240 dB).
inline constexpr double kLosNullFloor = 1e-12;

/// Smallest antenna height fed into the LoS formula when synthesizing channels;
/// a buoy in a trough can put the mast below mean sea level.
inline constexpr double kMinEffectiveHeight = 0.1;

/// Distance at which the two-ray regime hands over to the three-ray regime.
double two_ray_breakpoint(double tx_height, double rx_height, const PathLossParams& p);

/// Two-ray below the breakpoint, three-ray (evaporation duct) beyond it.
PathLoss path_loss_los(const LinkGeometry& geom, const PathLossParams& p, double xi_db);
double path_loss_nlos(double distance, const PathLossParams& p, double xi_db);
double path_loss_free_space(double distance, double carrier_hz);

/// P_r = P_t + G_t - L + G_r (all dB).
double received_power(double tx_power_db, double loss_db, const PathLossParams& p);

double draw_shadowing(double sigma_db, Rng& rng);

/// Converts the link's loss (with a fresh shadowing draw) into a field coefficient.
/// LoS phase follows the path length; NLoS phase is uniform.
ComplexGain link_gain(const LinkGeometry& geom, const PathLossParams& p, Rng& rng, bool* clamped = nullptr);

/// Passive reflecting surface: element positions (absolute, m) and phase shifts.
struct RisConfig {
  std::vector<Point3> element_positions;
  std::vector<double> phases;

  std::size_t size() const { return element_positions.size(); }
  Point3 center() const;
  /// Reflection vector q = [e^{j theta_n}].
  CRowVec reflection() const;
  void validate() const;
};

/// Uniform planar array in a vertical plane centred at `center`, whose outward
/// normal points along `facing_azimuth` (radians from +x). Elements sit on a
/// near-square grid with the given spacing; all phases start at zero.
RisConfig make_planar_ris(Point3 center, double facing_azimuth, std::size_t elements, double spacing);

struct DirectChannel {
  CRowVec h;  // 1 x M
  LinkState state = LinkState::LoS;
  bool clamped = false;
};

/// IoT -> centre-buoy channel; LoS/NLoS from the wave geometry, one common
/// amplitude, receive ULA (lambda/2, axis along y) steering phases.
DirectChannel synthesize_direct_channel(const FloatingNode& iot, const FloatingNode& rx, const WaveField& wave,
                                        double t, std::size_t antennas, const PathLossParams& p, Rng& rng);

struct RisChannels {
  CRowVec h_r;  // 1 x N, IoT -> RIS
  CMat F;       // N x M, RIS -> centre buoy
  bool clamped = false;
};

/// Both RIS hops are always LoS. Far-field planar-array phases per element.
RisChannels synthesize_ris_channels(const FloatingNode& iot, const RisConfig& ris, const FloatingNode& rx,
                                    const WaveField& wave, double t, std::size_t antennas,
                                    const PathLossParams& p, Rng& rng);

/// diag(h_r) F.
CMat cascade(const CRowVec& h_r, const CMat& F);

/// Phase of the receive ULA element `m` for a plane wave arriving from `azimuth`.
double ula_phase(std::size_t m, double azimuth);

}  // namespace marisim
