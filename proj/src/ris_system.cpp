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

#include "marisim/ris_system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace marisim {

void NetworkSnapshot::validate() const {
  const auto I = static_cast<std::size_t>(Hd.cols());
  if (G.size() != I) throw std::invalid_argument("snapshot: need one cascaded channel per IoT");
  if (tx_power.size() != I) throw std::invalid_argument("snapshot: need one transmit power per IoT");
  for (std::size_t i = 0; i < I; ++i) {
    if (G[i].cols() != Hd.rows()) throw std::invalid_argument("snapshot: G_" + std::to_string(i) + " has wrong column count");
    if (G[i].rows() != G.front().rows()) throw std::invalid_argument("snapshot: RIS sizes disagree across IoTs");
    if (!(tx_power[i] >= 0.0)) throw std::invalid_argument("snapshot: transmit powers must be >= 0");
  }
  if (!(noise_power > 0.0)) throw std::invalid_argument("snapshot: noise power must be > 0");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("snapshot: bandwidth must be > 0");
}

void require_unit_modulus(const CRowVec& q) {
  for (Eigen::Index n = 0; n < q.size(); ++n) {
    if (std::abs(std::abs(q(n)) - 1.0) > kUnitModulusTol) {
      throw std::invalid_argument("reflection coefficient " + std::to_string(n) + " is not unit-modulus");
    }
  }
}

CRowVec phases_to_reflection(const std::vector<double>& theta) {
  CRowVec q(static_cast<Eigen::Index>(theta.size()));
  for (std::size_t n = 0; n < theta.size(); ++n) q(static_cast<Eigen::Index>(n)) = std::polar(1.0, theta[n]);
  return q;
}

std::vector<double> reflection_to_phases(const CRowVec& q) {
  std::vector<double> theta(static_cast<std::size_t>(q.size()));
  for (Eigen::Index n = 0; n < q.size(); ++n) theta[static_cast<std::size_t>(n)] = wrap_phase(std::arg(q(n)));
  return theta;
}

CRowVec combined_channel(const CRowVec& h_d, const CRowVec& q, const CMat& G) {
  if (q.size() != G.rows() || h_d.size() != G.cols()) throw std::invalid_argument("combined_channel: dimension mismatch");
  require_unit_modulus(q);
  return h_d + q * G;
}

CRowVec received_signal(const NetworkSnapshot& snap, const CRowVec& q, const CColVec& s, const CRowVec& z) {
  snap.validate();
  const auto I = snap.iots();
  if (static_cast<std::size_t>(s.size()) != I) throw std::invalid_argument("received_signal: need one symbol per IoT");
  if (z.size() != snap.Hd.rows()) throw std::invalid_argument("received_signal: noise length must equal M");
  CRowVec y = z;
  for (std::size_t i = 0; i < I; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    if (std::norm(s(ii)) > snap.tx_power[i] * (1.0 + 1e-9) + 1e-300) {
      throw std::invalid_argument("received_signal: symbol exceeds the IoT power budget");
    }
    y += combined_channel(snap.direct(i), q, snap.G[i]) * s(ii);
  }
  return y;
}

double received_energy(const NetworkSnapshot& snap, const CRowVec& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < snap.iots(); ++i) {
    if (snap.tx_power[i] == 0.0) continue;
    total += snap.tx_power[i] * combined_channel(snap.direct(i), q, snap.G[i]).squaredNorm();
  }
  return total;
}

double sum_capacity(const NetworkSnapshot& snap, const CRowVec& q) {
  snap.validate();
  return snap.bandwidth * std::log2(1.0 + received_energy(snap, q) / snap.noise_power);
}

double capacity_without_ris(const NetworkSnapshot& snap) {
  snap.validate();
  double total = 0.0;
  for (std::size_t i = 0; i < snap.iots(); ++i) total += snap.tx_power[i] * snap.Hd.col(static_cast<Eigen::Index>(i)).squaredNorm();
  return snap.bandwidth * std::log2(1.0 + total / snap.noise_power);
}

double aligned_capacity_bound(const NetworkSnapshot& snap) {
  snap.validate();
  if (snap.antennas() != 1) throw std::invalid_argument("bound defined for single-antenna receiver");
  double total = 0.0;
  for (std::size_t i = 0; i < snap.iots(); ++i) {
    const double amp = std::abs(snap.Hd(0, static_cast<Eigen::Index>(i))) + snap.G[i].cwiseAbs().sum();
    total += snap.tx_power[i] * amp * amp;
  }
  return snap.bandwidth * std::log2(1.0 + total / snap.noise_power);
}

}  // namespace marisim
