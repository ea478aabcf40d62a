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

#include "marisim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace marisim {

namespace {

double db_to_field(double db) { return std::pow(10.0, db / 20.0); }

struct Unit3 {
  double x, y, z;
};

Unit3 unit_vector(const Point3& from, const Point3& to) {
  const double d = distance(from, to);
  if (!(d > 0.0)) return {0.0, 0.0, 0.0};
  return {(to.x - from.x) / d, (to.y - from.y) / d, (to.z - from.z) / d};
}

double dot(const Point3& offset, const Unit3& u) { return offset.x * u.x + offset.y * u.y + offset.z * u.z; }

}  // namespace

void PathLossParams::validate() const {
  if (!(carrier_hz > 0.0)) throw std::invalid_argument("carrier frequency must be > 0");
  if (!(duct_height > 0.0)) throw std::invalid_argument("evaporation duct height must be > 0");
  if (!(reference_distance > 0.0)) throw std::invalid_argument("reference distance must be > 0");
  if (!(sigma_los_db >= 0.0) || !(sigma_nlos_db >= 0.0)) {
    throw std::invalid_argument("shadowing standard deviations must be >= 0");
  }
}

double two_ray_breakpoint(double tx_height, double rx_height, const PathLossParams& p) {
  return 4.0 * tx_height * rx_height / p.wavelength();
}

PathLoss path_loss_los(const LinkGeometry& geom, const PathLossParams& p, double xi_db) {
  const double d = geom.distance;
  const double ht = geom.tx_height;
  const double hr = geom.rx_height;
  if (!(d > 0.0)) throw std::invalid_argument("LoS path loss needs a positive distance");
  if (!(ht > 0.0) || !(hr > 0.0)) throw std::invalid_argument("LoS path loss needs positive antenna heights");

  const double lambda = p.wavelength();
  const double spread = lambda / (kTwoPi * d);
  const double direct = std::sin(kTwoPi * ht * hr / (lambda * d));

  double arg = 0.0;
  if (d <= two_ray_breakpoint(ht, hr, p)) {
    arg = spread * direct;
  } else {
    const double he = p.duct_height;
    const double delta = 2.0 * direct * std::sin(kTwoPi * (he - ht) * (he - hr) / (lambda * d));
    arg = spread * (1.0 + delta);
  }

  PathLoss out;
  double mag = std::abs(arg);
  if (mag < kLosNullFloor) {
    mag = kLosNullFloor;
    out.clamped = true;
  }
  out.db = -20.0 * std::log10(mag) + xi_db;
  return out;
}

double path_loss_nlos(double distance, const PathLossParams& p, double xi_db) {
  if (distance < p.reference_distance) throw std::invalid_argument("below reference distance");
  return p.nlos_intercept_db + 10.0 * p.nlos_exponent * std::log10(distance / p.reference_distance) + xi_db;
}

double path_loss_free_space(double distance, double carrier_hz) {
  if (!(distance > 0.0) || !(carrier_hz > 0.0)) {
    throw std::invalid_argument("free-space loss needs positive distance and frequency");
  }
  return -147.55 + 20.0 * std::log10(carrier_hz) + 20.0 * std::log10(distance);
}

double received_power(double tx_power_db, double loss_db, const PathLossParams& p) {
  return tx_power_db + p.tx_gain_db - loss_db + p.rx_gain_db;
}

double draw_shadowing(double sigma_db, Rng& rng) {
  if (sigma_db < 0.0) throw std::invalid_argument("shadowing sigma must be >= 0");
  if (sigma_db == 0.0) return 0.0;
  return sigma_db * rng.normal();
}

ComplexGain link_gain(const LinkGeometry& geom, const PathLossParams& p, Rng& rng, bool* clamped) {
  ComplexGain g;
  double loss = 0.0;
  if (geom.state == LinkState::LoS) {
    const PathLoss pl = path_loss_los(geom, p, draw_shadowing(p.sigma_los_db, rng));
    loss = pl.db;
    if (clamped) *clamped = pl.clamped;
    g.phase = wrap_phase(-kTwoPi * geom.distance / p.wavelength());
  } else {
    loss = path_loss_nlos(geom.distance, p, draw_shadowing(p.sigma_nlos_db, rng));
    if (clamped) *clamped = false;
    g.phase = rng.uniform(0.0, kTwoPi);
  }
  g.amplitude = db_to_field(p.tx_gain_db - loss + p.rx_gain_db);
  return g;
}

Point3 RisConfig::center() const {
  Point3 c;
  if (element_positions.empty()) return c;
  for (const auto& e : element_positions) {
    c.x += e.x;
    c.y += e.y;
    c.z += e.z;
  }
  const double n = static_cast<double>(element_positions.size());
  return {c.x / n, c.y / n, c.z / n};
}

CRowVec RisConfig::reflection() const {
  CRowVec q(static_cast<Eigen::Index>(phases.size()));
  for (std::size_t n = 0; n < phases.size(); ++n) q(static_cast<Eigen::Index>(n)) = std::polar(1.0, phases[n]);
  return q;
}

void RisConfig::validate() const {
  if (element_positions.empty()) throw std::invalid_argument("RIS needs at least one element");
  if (phases.size() != element_positions.size()) throw std::invalid_argument("RIS phase count mismatch");
  for (double th : phases) {
    if (!(th >= 0.0 && th < kTwoPi)) throw std::invalid_argument("RIS phase outside [0, 2pi)");
  }
}

RisConfig make_planar_ris(Point3 center, double facing_azimuth, std::size_t elements, double spacing) {
  if (elements == 0) throw std::invalid_argument("RIS needs at least one element");
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(elements))));
  const std::size_t rows = (elements + cols - 1) / cols;
  const double hx = -std::sin(facing_azimuth);
  const double hy = std::cos(facing_azimuth);
  const double col0 = 0.5 * static_cast<double>(cols - 1);
  const double row0 = 0.5 * static_cast<double>(rows - 1);

  RisConfig ris;
  ris.element_positions.reserve(elements);
  for (std::size_t k = 0; k < elements; ++k) {
    const double u = (static_cast<double>(k % cols) - col0) * spacing;
    const double v = (static_cast<double>(k / cols) - row0) * spacing;
    ris.element_positions.push_back({center.x + u * hx, center.y + u * hy, center.z + v});
  }
  // a partly filled last row pulls the centroid off the requested centre
  const Point3 c = ris.center();
  for (Point3& e : ris.element_positions) {
    e.x += center.x - c.x;
    e.y += center.y - c.y;
    e.z += center.z - c.z;
  }
  ris.phases.assign(elements, 0.0);
  return ris;
}

double ula_phase(std::size_t m, double azimuth) {
  return -kPi * static_cast<double>(m) * std::sin(azimuth);
}

DirectChannel synthesize_direct_channel(const FloatingNode& iot, const FloatingNode& rx, const WaveField& wave,
                                        double t, std::size_t antennas, const PathLossParams& p, Rng& rng) {
  if (antennas == 0) throw std::invalid_argument("receiver needs at least one antenna");
  DirectChannel out;
  out.state = los_state(iot, rx, wave, t);

  LinkGeometry geom;
  geom.tx_height = std::max(antenna_height(iot, wave, t), kMinEffectiveHeight);
  geom.rx_height = std::max(antenna_height(rx, wave, t), kMinEffectiveHeight);
  geom.distance = distance(iot.position, rx.position);
  if (out.state == LinkState::NLoS) geom.distance = std::max(geom.distance, p.reference_distance);
  geom.state = out.state;

  const cdouble g = link_gain(geom, p, rng, &out.clamped).value();
  const double az = std::atan2(iot.position.y - rx.position.y, iot.position.x - rx.position.x);
  out.h.resize(static_cast<Eigen::Index>(antennas));
  for (std::size_t m = 0; m < antennas; ++m) {
    out.h(static_cast<Eigen::Index>(m)) = g * std::polar(1.0, ula_phase(m, az));
  }
  return out;
}

RisChannels synthesize_ris_channels(const FloatingNode& iot, const RisConfig& ris, const FloatingNode& rx,
                                    const WaveField& wave, double t, std::size_t antennas,
                                    const PathLossParams& p, Rng& rng) {
  if (ris.size() == 0) throw std::invalid_argument("RIS needs at least one element");
  if (antennas == 0) throw std::invalid_argument("receiver needs at least one antenna");

  const Point3 c = ris.center();
  const Point3 iot3{iot.position.x, iot.position.y, std::max(antenna_height(iot, wave, t), kMinEffectiveHeight)};
  const Point3 rx3{rx.position.x, rx.position.y, std::max(antenna_height(rx, wave, t), kMinEffectiveHeight)};
  const double k = kTwoPi / p.wavelength();

  // hop 1: IoT antenna -> RIS (element gain 0 dB)
  PathLossParams p1 = p;
  p1.rx_gain_db = 0.0;
  LinkGeometry g1{iot3.z, c.z, std::hypot(iot3.x - c.x, iot3.y - c.y), LinkState::LoS};
  bool clamp1 = false;
  const double amp1 = link_gain(g1, p1, rng, &clamp1).amplitude;

  // hop 2: RIS -> centre buoy
  PathLossParams p2 = p;
  p2.tx_gain_db = 0.0;
  LinkGeometry g2{c.z, rx3.z, std::hypot(rx3.x - c.x, rx3.y - c.y), LinkState::LoS};
  bool clamp2 = false;
  const double amp2 = link_gain(g2, p2, rng, &clamp2).amplitude;

  const double d1 = distance(c, iot3);
  const double d2 = distance(c, rx3);
  const Unit3 u_in = unit_vector(c, iot3);
  const Unit3 u_out = unit_vector(c, rx3);
  const double az_rx = std::atan2(c.y - rx.position.y, c.x - rx.position.x);

  const auto N = static_cast<Eigen::Index>(ris.size());
  const auto M = static_cast<Eigen::Index>(antennas);
  RisChannels out;
  out.clamped = clamp1 || clamp2;
  out.h_r.resize(N);
  out.F.resize(N, M);
  for (Eigen::Index n = 0; n < N; ++n) {
    const Point3& e = ris.element_positions[static_cast<std::size_t>(n)];
    const Point3 off{e.x - c.x, e.y - c.y, e.z - c.z};
    out.h_r(n) = std::polar(amp1, -k * (d1 - dot(off, u_in)));
    const double dep = -k * (d2 - dot(off, u_out));
    for (Eigen::Index m = 0; m < M; ++m) {
      out.F(n, m) = std::polar(amp2, dep + ula_phase(static_cast<std::size_t>(m), az_rx));
    }
  }
  return out;
}

CMat cascade(const CRowVec& h_r, const CMat& F) {
  if (h_r.size() != F.rows()) throw std::invalid_argument("cascade: h_r length must equal F rows");
  return h_r.transpose().asDiagonal() * F;
}

}  // namespace marisim
