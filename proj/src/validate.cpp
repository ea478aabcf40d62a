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

#include "marisim/validate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "marisim/channel.hpp"
#include "marisim/energy.hpp"
#include "marisim/estimation.hpp"
#include "marisim/optimizer.hpp"
#include "marisim/ris_system.hpp"

namespace marisim {

namespace {

NetworkSnapshot random_snapshot(std::size_t N, std::size_t M, std::size_t I, Rng& rng) {
  NetworkSnapshot s;
  s.Hd.resize(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(I));
  for (Eigen::Index c = 0; c < s.Hd.cols(); ++c) {
    for (Eigen::Index r = 0; r < s.Hd.rows(); ++r) s.Hd(r, c) = rng.complex_normal();
  }
  for (std::size_t i = 0; i < I; ++i) {
    CMat G(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(M));
    for (Eigen::Index c = 0; c < G.cols(); ++c) {
      for (Eigen::Index r = 0; r < G.rows(); ++r) G(r, c) = rng.complex_normal();
    }
    s.G.push_back(G);
    s.tx_power.push_back(rng.uniform(0.5, 2.0));
  }
  s.noise_power = 0.1;
  s.bandwidth = 1.0;
  return s;
}

template <typename F>
CheckResult check(const std::string& name, F&& body) {
  CheckResult r{name, false, ""};
  try {
    std::ostringstream detail;
    r.passed = body(detail);
    r.detail = detail.str();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("threw: ") + e.what();
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const ScenarioConfig& cfg, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const SeaState& state = cfg.sea_states.lookup(cfg.sea_state);
  const WaveField wave = wave_from_sea_state(state, cfg.geometry.wave_source);

  out.push_back(check("sea_surface.height_bounds", [&](std::ostream& d) {
    Rng rng(derive_seed(seed, {1}));
    for (int k = 0; k < 1000; ++k) {
      const FloatingNode n{{rng.uniform(-300, 300), rng.uniform(-300, 300)}, rng.uniform(0.5, 30.0), 0.0};
      const double h = antenna_height(n, wave, rng.uniform(0.0, 100.0));
      if (h < n.mast_height - wave.amplitude - 1e-12 || h > n.mast_height + wave.amplitude + 1e-12) {
        d << "height " << h << " outside [h0 - a, h0 + a]";
        return false;
      }
    }
    return true;
  }));

  out.push_back(check("sea_surface.los_symmetry", [&](std::ostream& d) {
    Rng rng(derive_seed(seed, {2}));
    for (int k = 0; k < 1000; ++k) {
      const FloatingNode a{{rng.uniform(-300, 300), rng.uniform(-300, 300)}, rng.uniform(0.5, 30.0), 0.0};
      const FloatingNode b{{rng.uniform(-300, 300), rng.uniform(-300, 300)}, rng.uniform(0.5, 30.0), 0.0};
      const double t = rng.uniform(0.0, wave.period);
      if (los_state(a, b, wave, t) != los_state(b, a, wave, t)) {
        d << "asymmetric at sample " << k;
        return false;
      }
    }
    return true;
  }));

  out.push_back(check("channel.nlos_above_free_space", [&](std::ostream& d) {
    const PathLossParams& p = cfg.radio.path_loss;
    for (double dist = 100.0; dist <= 1000.0; dist += 10.0) {
      if (!(path_loss_nlos(dist, p, 0.0) > path_loss_free_space(dist, p.carrier_hz))) {
        d << "NLoS loss not above free space at " << dist << " m";
        return false;
      }
    }
    return true;
  }));

  out.push_back(check("energy.tx_budget", [&](std::ostream& d) {
    for (const SeaState& s : cfg.sea_states.rows()) {
      const WaveField w = wave_from_sea_state(s);
      const double p = available_tx_power(harvested_power(w.amplitude, w.period, cfg.energy), cfg.energy);
      if (p < 0.0 || p > cfg.energy.p_max_w) {
        d << "sea state " << s.level << " gives P_t = " << p;
        return false;
      }
    }
    return true;
  }));

  out.push_back(check("estimation.noiseless_exact", [&](std::ostream& d) {
    Rng rng(derive_seed(seed, {3}));
    const NetworkSnapshot s = random_snapshot(8, 3, 3, rng);
    const ChannelEstimate est =
        estimate_channels(s, make_orthogonal_pilots(3, 3, s.tx_power), make_reflection_schedule(8, 8), rng, true);
    double err = (est.Hd - s.Hd).norm() / s.Hd.norm();
    for (std::size_t i = 0; i < s.G.size(); ++i) err = std::max(err, (est.G[i] - s.G[i]).norm() / s.G[i].norm());
    d << "max relative error " << err;
    return err < 1e-9;
  }));

  out.push_back(check("optimizer.feasible_and_dominant", [&](std::ostream& d) {
    Rng rng(derive_seed(seed, {4}));
    for (int k = 0; k < 5; ++k) {
      const NetworkSnapshot s = random_snapshot(6, 2, 2, rng);
      const PhaseSolution sol = optimize_phases(s, cfg.optimizer, rng);
      require_unit_modulus(sol.q);
      const HomogenizedObjective obj = build_D(s.Hd, s.G, s.tx_power);
      const double ones = std::max(obj.evaluate(CRowVec::Ones(6)), obj.evaluate(-CRowVec::Ones(6)));
      if (sol.objective < ones - 1e-9 || sol.objective > sol.relaxation_bound * (1 + 1e-6) + 1e-9) {
        d << "objective " << sol.objective << " vs trivial " << ones << " and bound " << sol.relaxation_bound;
        return false;
      }
    }
    return true;
  }));

  ScenarioConfig small = cfg;
  small.radio.ris_elements = std::min<std::size_t>(cfg.radio.ris_elements, 16);
  small.estimation.subframes = 0;
  small.estimation.mode = CsiMode::Noiseless;

  out.push_back(check("harness.rate_ordering", [&](std::ostream& d) {
    for (std::size_t k = 0; k < 10; ++k) {
      const TrialRecord r = run_coherence_interval(small, k, derive_seed(seed, {5, k}));
      const double tol = 1e-9 * std::max(1.0, r.rate_noris);
      if (r.rate_ris + tol < r.rate_noris || r.eff_rate_ris > r.rate_ris || r.eff_rate_noris > r.rate_noris ||
          r.eff_rate_ris < 0.0 || r.eff_rate_noris < 0.0) {
        d << "interval " << k << ": ris " << r.rate_ris << " noris " << r.rate_noris;
        return false;
      }
    }
    return true;
  }));

  out.push_back(check("harness.sweep_determinism", [&](std::ostream& d) {
    ScenarioConfig a = small;
    a.seed = seed;
    a.threads = 1;
    ScenarioConfig b = a;
    b.threads = 3;
    const SweepSpec spec{SweepVariable::RxMastHeight, {2.0, 10.0}, {}, 6};
    const bool same = to_csv(run_sweep(a, spec)) == to_csv(run_sweep(b, spec));
    if (!same) d << "CSV differs between 1 and 3 threads";
    return same;
  }));

  return out;
}

}  // namespace marisim
