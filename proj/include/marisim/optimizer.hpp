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
#include <string>
#include <vector>

#include "marisim/rng.hpp"
#include "marisim/ris_system.hpp"
#include "marisim/types.hpp"

namespace marisim {

/// Homogenized received-energy objective v D v^H with v = [q, 1].
///
///   D = [ sum P_i G_i G_i^H        sum P_i G_i (h_i^d)^H ]
///       [ sum P_i h_i^d G_i^H      sum P_i ||h_i^d||^2    ]
struct HomogenizedObjective {
  CMat D;  // (N+1) x (N+1), Hermitian PSD
  /// Optional factor with D = W W^H (filled by build_D); lets the low-rank
  /// solver skip factoring D itself.
  CMat W;

  std::size_t elements() const { return static_cast<std::size_t>(D.rows()) - 1; }
  /// v D v^H for v = [q, 1].
  double evaluate(const CRowVec& q) const;
};

HomogenizedObjective build_D(const CMat& Hd, const std::vector<CMat>& G, const std::vector<double>& tx_power);

enum class SdpMethod {
  /// V = Y Y^H with unit-norm rows of Y, maximized row by row; optimality is
  /// certified through the dual bound below.
  LowRank,
  /// Splitting between the unit-diagonal affine set and the PSD cone.
  Admm,
};

const char* to_string(SdpMethod m);
/// Accepts "low_rank" and "admm".
SdpMethod parse_sdp_method(const std::string& s);

struct SdpOptions {
  double tol = 1e-6;  // LowRank: relative duality gap; Admm: scaled residuals
  std::size_t max_iter = 5000;  // LowRank: row sweeps; Admm: iterations
  SdpMethod method = SdpMethod::LowRank;
};

/// Solution of max Tr(DV) s.t. diag(V) = 1, V PSD.
struct SdpSolution {
  CMat V;
  double objective = 0.0;  // Tr(DV) on the caller's D
  std::size_t iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  /// Certified upper bound on max Tr(DV) over the feasible set.
  double dual_bound = 0.0;
  bool converged = false;
};

/// Weak-duality bound: for any real lambda, Tr(DV) <= sum(lambda) + n max(0,
/// -eig_min(Diag(lambda) - D)) for every feasible V. Uses lambda = Re diag(D V).
double relaxation_upper_bound(const CMat& D, const CMat& V);

/// Solves the unit-diagonal PSD relaxation. LowRank runs block-coordinate
/// ascent on a factor of rank about sqrt(2n), growing the rank if the dual
/// certificate does not close. Admm alternates projections onto {diag(V) = 1}
/// and the PSD cone with a scaled dual update; its V is the PSD iterate rescaled
/// to an exactly unit diagonal. Non-convergence returns the last iterate with
/// `converged == false`. Deterministic.
SdpSolution solve_sdp(const HomogenizedObjective& obj, const SdpOptions& opt = {});

struct RandomizationResult {
  CRowVec q;
  double objective = 0.0;
  std::size_t best_draw = 0;
  std::size_t usable_draws = 0;
};

/// Gaussian randomization: v = U Sigma^{1/2} e with e ~ CN(0, I), theta_n =
/// arg(v_n / v_{N+1}); returns the best of `draws` candidates (first wins ties).
/// Throws NumericalError when every draw has v_{N+1} = 0.
RandomizationResult randomize(const SdpSolution& sol, std::size_t draws, const HomogenizedObjective& obj, Rng& rng);

struct PhaseOptimizerConfig {
  SdpOptions sdp;
  std::size_t randomization_draws = 100;
  /// When non-empty, D, V and the solver residuals are written here as JSON.
  std::string debug_dump_path;
};

struct PhaseSolution {
  CRowVec q;
  double capacity = 0.0;   // bits/s under q on the snapshot that was optimized
  double objective = 0.0;  // received energy v D v^H
  double relaxation_bound = 0.0;
  SdpSolution sdp;
  bool used_fallback = false;
};

/// build_D -> solve_sdp -> randomize, then keeps the better of the randomized
/// reflection and the trivial reflections +-1. Since f(q) + f(-q) >= 2 f_direct,
/// the result never falls below the direct-only energy.
PhaseSolution optimize_phases(const NetworkSnapshot& snap, const PhaseOptimizerConfig& cfg, Rng& rng);

struct BruteForceResult {
  CRowVec q;
  double capacity = 0.0;
  double objective = 0.0;
};

/// Exhaustive search over theta_n in {2 pi k / levels}. Throws
/// std::invalid_argument if levels^N exceeds 1e8.
BruteForceResult brute_force_phases(const NetworkSnapshot& snap, std::size_t levels);

/// Writes D, V and the residuals as JSON for offline inspection.
void dump_sdp_diagnostics(const std::string& path, const HomogenizedObjective& obj, const SdpSolution& sol);

}  // namespace marisim
