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

#include "marisim/estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace marisim {

namespace {

// Gram matrices below are Hermitian positive definite whenever the LS problem
// is well posed; anything numerically singular is reported instead of solved.
constexpr double kMinRcond = 1e-12;

}  // namespace

PilotBook make_orthogonal_pilots(std::size_t iots, std::size_t length, const std::vector<double>& powers) {
  if (length < iots) throw std::invalid_argument("pilot length T must be >= number of IoTs I");
  if (powers.size() != iots) throw std::invalid_argument("need one pilot power per IoT");
  for (double p : powers) {
    if (!(p > 0.0)) throw std::invalid_argument("pilot powers must be > 0");
  }
  const auto T = static_cast<Eigen::Index>(length);
  PilotBook book;
  book.powers = powers;
  book.S.resize(T, static_cast<Eigen::Index>(iots));
  for (Eigen::Index i = 0; i < book.S.cols(); ++i) {
    // unit-norm DFT column times sqrt(P_i T)
    const double scale = std::sqrt(powers[static_cast<std::size_t>(i)]);
    for (Eigen::Index t = 0; t < T; ++t) {
      const double ang = -kTwoPi * static_cast<double>((t * i) % T) / static_cast<double>(T);
      book.S(t, i) = std::polar(scale, ang);
    }
  }
  return book;
}

ReflectionSchedule make_reflection_schedule(std::size_t elements, std::size_t subframes,
                                            std::optional<std::uint64_t> scramble_seed) {
  if (elements == 0) throw std::invalid_argument("RIS needs at least one element");
  if (subframes < elements) throw std::invalid_argument("sub-frame count B must be >= N for a full-rank schedule");
  const auto N = static_cast<Eigen::Index>(elements);
  const auto B = static_cast<Eigen::Index>(subframes);

  ReflectionSchedule s;
  s.q0 = CRowVec::Ones(N);
  s.q1 = -s.q0;
  s.Qtilde.resize(N, B);
  std::optional<Rng> rng;
  if (scramble_seed) rng.emplace(*scramble_seed);
  for (Eigen::Index n = 0; n < N; ++n) {
    const double rot = rng ? rng->uniform(0.0, kTwoPi) : 0.0;
    for (Eigen::Index b = 0; b < B; ++b) {
      const double ang = -kTwoPi * static_cast<double>((n * b) % B) / static_cast<double>(B);
      s.Qtilde(n, b) = std::polar(1.0, ang + rot);
    }
  }
  return s;
}

CMat simulate_pilot_rx(const NetworkSnapshot& snap, const CRowVec& q, const PilotBook& pilots, Rng& rng,
                       bool noiseless) {
  snap.validate();
  if (pilots.iots() != snap.iots()) throw std::invalid_argument("pilot book and snapshot disagree on IoT count");
  const auto T = static_cast<Eigen::Index>(pilots.length());
  const auto M = static_cast<Eigen::Index>(snap.antennas());

  CMat Y = CMat::Zero(T, M);
  for (std::size_t i = 0; i < snap.iots(); ++i) {
    const CRowVec eff = combined_channel(snap.direct(i), q, snap.G[i]);
    Y.noalias() += pilots.S.col(static_cast<Eigen::Index>(i)) * eff;
  }
  if (!noiseless) {
    for (Eigen::Index m = 0; m < M; ++m) {
      for (Eigen::Index t = 0; t < T; ++t) Y(t, m) += rng.complex_normal(snap.noise_power);
    }
  }
  return Y;
}

CMat estimate_direct(const CMat& Y0, const CMat& Y1, const PilotBook& pilots) {
  if (Y0.rows() != pilots.S.rows() || Y1.rows() != Y0.rows() || Y1.cols() != Y0.cols()) {
    throw std::invalid_argument("estimate_direct: received blocks must be T x M");
  }
  const CMat gram = pilots.S.adjoint() * pilots.S;
  Eigen::LLT<CMat> llt(gram);
  if (llt.info() != Eigen::Success || llt.rcond() < kMinRcond) {
    throw NumericalError("estimate_direct: pilot Gram matrix is singular");
  }
  const CMat HdH = 0.5 * llt.solve(pilots.S.adjoint() * (Y0 + Y1));  // I x M
  return HdH.adjoint();
}

std::vector<CMat> estimate_cascaded(const std::vector<CMat>& Yb, const PilotBook& pilots, const CMat& Hd_hat,
                                    const ReflectionSchedule& sched) {
  const std::size_t B = sched.subframes();
  const auto I = static_cast<Eigen::Index>(pilots.iots());
  if (Yb.size() != B) throw std::invalid_argument("estimate_cascaded: need one received block per scheduled sub-frame");
  if (B < sched.elements()) throw std::invalid_argument("estimate_cascaded: B must be >= N");
  if (Hd_hat.cols() != I) throw std::invalid_argument("estimate_cascaded: direct estimate has wrong IoT count");

  const CMat gram = sched.Qtilde * sched.Qtilde.adjoint();
  Eigen::LLT<CMat> llt(gram);
  if (llt.info() != Eigen::Success || llt.rcond() < kMinRcond) {
    throw NumericalError("estimate_cascaded: reflection schedule is rank deficient");
  }

  const auto M = Hd_hat.rows();
  const CMat direct_part = pilots.S * Hd_hat.adjoint();  // T x M
  std::vector<CMat> UH(static_cast<std::size_t>(I), CMat(static_cast<Eigen::Index>(B), M));
  for (std::size_t b = 0; b < B; ++b) {
    if (Yb[b].rows() != pilots.S.rows() || Yb[b].cols() != M) {
      throw std::invalid_argument("estimate_cascaded: received blocks must be T x M");
    }
    const CMat W = pilots.S.adjoint() * (Yb[b] - direct_part);  // row i = s_i (Y_b - S H_d^H)
    for (Eigen::Index i = 0; i < I; ++i) {
      const double energy = pilots.powers[static_cast<std::size_t>(i)] * static_cast<double>(pilots.length());
      UH[static_cast<std::size_t>(i)].row(static_cast<Eigen::Index>(b)) = W.row(i) / energy;
    }
  }

  std::vector<CMat> G;
  G.reserve(static_cast<std::size_t>(I));
  for (const CMat& uh : UH) G.push_back(llt.solve(sched.Qtilde * uh));
  return G;
}

ChannelEstimate estimate_channels(const NetworkSnapshot& snap, const PilotBook& pilots,
                                  const ReflectionSchedule& sched, Rng& rng, bool noiseless) {
  const CMat Y0 = simulate_pilot_rx(snap, sched.q0, pilots, rng, noiseless);
  const CMat Y1 = simulate_pilot_rx(snap, sched.q1, pilots, rng, noiseless);

  ChannelEstimate est;
  est.Hd = estimate_direct(Y0, Y1, pilots);

  std::vector<CMat> Yb;
  Yb.reserve(sched.subframes());
  for (std::size_t b = 0; b < sched.subframes(); ++b) {
    Yb.push_back(simulate_pilot_rx(snap, sched.pattern(b), pilots, rng, noiseless));
  }
  est.G = estimate_cascaded(Yb, pilots, est.Hd, sched);
  est.pilot_slots = (sched.subframes() + 2) * pilots.length();
  return est;
}

}  // namespace marisim
