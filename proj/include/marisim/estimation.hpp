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
#include <cstdint>
#include <optional>
#include <vector>

#include "marisim/rng.hpp"
#include "marisim/ris_system.hpp"
#include "marisim/types.hpp"

namespace marisim {

/// Orthogonal uplink pilots. Column i of S is s_i^H, with s_i s_i^H = P_i T.
struct PilotBook {
  CMat S;  // T x I
  std::vector<double> powers;

  std::size_t length() const { return static_cast<std::size_t>(S.rows()); }
  std::size_t iots() const { return static_cast<std::size_t>(S.cols()); }
  /// Row pilot sequence s_i (1 x T).
  CRowVec sequence(std::size_t i) const { return S.col(static_cast<Eigen::Index>(i)).adjoint(); }
};

/// RIS reflection patterns used while sounding: q0, its negation q1, and B
/// scheduled patterns stored as the columns q_b^H of Qtilde (N x B).
struct ReflectionSchedule {
  CRowVec q0;
  CRowVec q1;
  CMat Qtilde;

  std::size_t subframes() const { return static_cast<std::size_t>(Qtilde.cols()); }
  std::size_t elements() const { return static_cast<std::size_t>(Qtilde.rows()); }
  /// Scheduled reflection q_b (1 x N).
  CRowVec pattern(std::size_t b) const { return Qtilde.col(static_cast<Eigen::Index>(b)).adjoint(); }
};

/// Columns of a T x T DFT basis scaled to the requested powers.
PilotBook make_orthogonal_pilots(std::size_t iots, std::size_t length, const std::vector<double>& powers);

/// q0 = all-ones, q1 = -q0, Qtilde = first N rows of the B x B DFT matrix (so
/// Qtilde Qtilde^H = B I). With a scramble seed every row is additionally
/// rotated by a random common phase, which keeps the Gram matrix unchanged.
ReflectionSchedule make_reflection_schedule(std::size_t elements, std::size_t subframes,
                                            std::optional<std::uint64_t> scramble_seed = std::nullopt);

/// One pilot sub-frame: Y = sum_i s_i^H (h_i^d + q G_i) + Z, Z ~ CN(0, sigma^2).
/// Pass `noiseless = true` to drop Z.
CMat simulate_pilot_rx(const NetworkSnapshot& snap, const CRowVec& q, const PilotBook& pilots, Rng& rng,
                       bool noiseless = false);

/// Least-squares direct channel from the two sign-flipped sub-frames; returns H_d (M x I).
CMat estimate_direct(const CMat& Y0, const CMat& Y1, const PilotBook& pilots);

/// Least-squares cascaded channels from the B scheduled sub-frames; returns G_i (N x M) per IoT.
std::vector<CMat> estimate_cascaded(const std::vector<CMat>& Yb, const PilotBook& pilots, const CMat& Hd_hat,
                                    const ReflectionSchedule& sched);

struct ChannelEstimate {
  CMat Hd;
  std::vector<CMat> G;
  std::size_t pilot_slots = 0;  // (B + 2) T
};

/// Runs all B + 2 sounding sub-frames against `snap` and both LS stages.
ChannelEstimate estimate_channels(const NetworkSnapshot& snap, const PilotBook& pilots,
                                  const ReflectionSchedule& sched, Rng& rng, bool noiseless = false);

}  // namespace marisim
