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

#include "marisim/types.hpp"

namespace marisim {

/// One coherence interval of the uplink, frozen.
///
/// `Hd` stacks the conjugated direct channels column-wise, H_d = [(h_1^d)^H ... (h_I^d)^H]
/// (M x I); `G[i]` is the cascaded IoT-RIS-receiver channel of IoT i (N x M).
struct NetworkSnapshot {
  CMat Hd;
  std::vector<CMat> G;
  std::vector<double> tx_power;  // |s_i|^2, W
  double noise_power = 1.0;      // sigma^2, W
  double bandwidth = 1.0;        // Hz

  std::size_t antennas() const { return static_cast<std::size_t>(Hd.rows()); }
  std::size_t iots() const { return static_cast<std::size_t>(Hd.cols()); }
  /// RIS element count; zero when there are no IoTs to carry it.
  std::size_t elements() const { return G.empty() ? 0 : static_cast<std::size_t>(G.front().rows()); }

  /// Direct channel h_i^d as a 1 x M row.
  CRowVec direct(std::size_t i) const { return Hd.col(static_cast<Eigen::Index>(i)).adjoint(); }

  /// Throws std::invalid_argument on inconsistent dimensions or bad powers.
  void validate() const;
};

inline constexpr double kUnitModulusTol = 1e-9;

/// Throws std::invalid_argument unless every |q_n| is 1 within kUnitModulusTol.
void require_unit_modulus(const CRowVec& q);

CRowVec phases_to_reflection(const std::vector<double>& theta);
std::vector<double> reflection_to_phases(const CRowVec& q);

/// h_d + q G.
CRowVec combined_channel(const CRowVec& h_d, const CRowVec& q, const CMat& G);

/// sum_i (h_i^d + q G_i) s_i + z.
CRowVec received_signal(const NetworkSnapshot& snap, const CRowVec& q, const CColVec& s, const CRowVec& z);

/// sum_i P_i ||h_i^d + q G_i||^2.
double received_energy(const NetworkSnapshot& snap, const CRowVec& q);

/// beta log2(1 + sum_i P_i ||h_i^d + q G_i||^2 / sigma^2).
double sum_capacity(const NetworkSnapshot& snap, const CRowVec& q);

/// Capacity with the reflected term removed (direct links only).
double capacity_without_ris(const NetworkSnapshot& snap);

/// Perfect-phase-alignment capacity for a single-antenna receiver:
/// beta log2(1 + sum_i P_i (|h_i| + sum_n |g_{n,i}|)^2 / sigma^2).
double aligned_capacity_bound(const NetworkSnapshot& snap);

}  // namespace marisim
