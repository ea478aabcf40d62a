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

#include "marisim/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>

#ifdef MARISIM_HAVE_LAPACKE
#include <lapacke.h>
#endif

#include "json.hpp"

namespace marisim {

namespace {

double trace_product(const CMat& A, const CMat& B) {
  // Re Tr(A B) without forming the product
  return (A.array() * B.transpose().array()).sum().real();
}

/// Hermitian eigendecomposition, eigenvalues ascending. LAPACK's
/// divide-and-conquer driver is several times faster than Eigen's QR sweep at
/// the sizes the relaxation runs at, so it is used when available.
class HermitianEig {
 public:
  explicit HermitianEig(Eigen::Index n) : values_(n), vectors_(n, n) {}

  void compute(const CMat& X, bool with_vectors = true) {
    const Eigen::Index n = X.rows();
#ifdef MARISIM_HAVE_LAPACKE
    vectors_ = X;
    values_.resize(n);
    const lapack_int info =
        LAPACKE_zheevd(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'L', static_cast<lapack_int>(n),
                       reinterpret_cast<lapack_complex_double*>(vectors_.data()), static_cast<lapack_int>(n),
                       values_.data());
    if (info != 0) throw NumericalError("eigendecomposition failed (zheevd info " + std::to_string(info) + ")");
#else
    es_.compute(X, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es_.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
    values_ = es_.eigenvalues();
    if (with_vectors) vectors_ = es_.eigenvectors();
    (void)n;
#endif
  }

  const Eigen::VectorXd& values() const { return values_; }
  const CMat& vectors() const { return vectors_; }

 private:
  Eigen::VectorXd values_;
  CMat vectors_;
#ifndef MARISIM_HAVE_LAPACKE
  Eigen::SelfAdjointEigenSolver<CMat> es_;
#endif
};

/// Projection onto the PSD cone. Uses whichever side of the spectrum is smaller
/// to assemble the result.
CMat project_psd(const CMat& X, HermitianEig& es) {
  es.compute(X);
  const Eigen::VectorXd& lam = es.values();  // ascending
  const CMat& U = es.vectors();
  const Eigen::Index n = X.rows();
  Eigen::Index neg = 0;
  while (neg < n && lam(neg) < 0.0) ++neg;
  const Eigen::Index pos = n - neg;

  if (pos <= neg) {
    CMat B = U.rightCols(pos);
    for (Eigen::Index k = 0; k < pos; ++k) B.col(k) *= std::sqrt(lam(neg + k));
    return B * B.adjoint();
  }
  CMat B = U.leftCols(neg);
  for (Eigen::Index k = 0; k < neg; ++k) B.col(k) *= std::sqrt(-lam(k));
  CMat Z = X;
  Z.noalias() += B * B.adjoint();
  return Z;
}

void hermitize(CMat& A) { A = (0.5 * (A + A.adjoint())).eval(); }

/// Rescales a PSD matrix to unit diagonal (congruence keeps it PSD).
CMat unit_diagonal(const CMat& Z) {
  const Eigen::Index n = Z.rows();
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = Z(i, i).real();
    s(i) = d > 1e-300 ? 1.0 / std::sqrt(d) : 0.0;
  }
  CMat V = s.asDiagonal() * Z * s.asDiagonal();
  for (Eigen::Index i = 0; i < n; ++i) V(i, i) = 1.0;
  return V;
}

}  // namespace

double HomogenizedObjective::evaluate(const CRowVec& q) const {
  const Eigen::Index n = D.rows();
  if (q.size() != n - 1) throw std::invalid_argument("objective: reflection length must equal N");
  CRowVec v(n);
  v.head(n - 1) = q;
  v(n - 1) = 1.0;
  return (v * D * v.adjoint())(0, 0).real();
}

HomogenizedObjective build_D(const CMat& Hd, const std::vector<CMat>& G, const std::vector<double>& tx_power) {
  const auto I = static_cast<std::size_t>(Hd.cols());
  if (G.size() != I || tx_power.size() != I) throw std::invalid_argument("build_D: need one G_i and one power per IoT");
  if (I == 0) throw std::invalid_argument("build_D: no IoTs");
  const Eigen::Index N = G.front().rows();
  const Eigen::Index M = Hd.rows();

  HomogenizedObjective obj;
  obj.D = CMat::Zero(N + 1, N + 1);
  obj.W = CMat::Zero(N + 1, static_cast<Eigen::Index>(I) * M);
  for (std::size_t i = 0; i < I; ++i) {
    if (G[i].rows() != N || G[i].cols() != M) throw std::invalid_argument("build_D: dimension mismatch");
    const double p = tx_power[i];
    if (!(p >= 0.0)) throw std::invalid_argument("build_D: powers must be >= 0");
    if (p == 0.0) continue;
    const auto hH = Hd.col(static_cast<Eigen::Index>(i));  // (h_i^d)^H, M x 1
    // [q, 1] W_i = sqrt(P_i) (q G_i + h_i^d)
    auto Wi = obj.W.middleCols(static_cast<Eigen::Index>(i) * M, M);
    Wi.topRows(N) = std::sqrt(p) * G[i];
    Wi.bottomRows(1) = std::sqrt(p) * hH.adjoint();
    obj.D.topLeftCorner(N, N).noalias() += p * G[i] * G[i].adjoint();
    obj.D.topRightCorner(N, 1).noalias() += p * G[i] * hH;
    obj.D(N, N) += p * hH.squaredNorm();
  }
  obj.D.bottomLeftCorner(1, N) = obj.D.topRightCorner(N, 1).adjoint();
  return obj;
}

namespace {

SdpSolution solve_admm(const CMat& D, double scale, const SdpOptions& opt) {
  const Eigen::Index n = D.rows();
  SdpSolution sol;
  const CMat Dn = D / scale;
  const double nn = static_cast<double>(n);
  HermitianEig es(n);

  // warm start at the rank-1 point built from the dominant eigenvector
  es.compute(Dn);
  CColVec w = es.vectors().col(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = std::abs(w(i)) > 0.0 ? w(i) / std::abs(w(i)) : cdouble(1.0);
  CMat Z = w * w.adjoint();
  CMat U = CMat::Zero(n, n);
  CMat V(n, n);
  CMat Zprev(n, n);

  double rho = 1.0 / nn;
  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    // affine step: argmin -Tr(Dn V) + rho/2 ||V - Z + U||^2 s.t. diag(V) = 1
    V = Z - U + Dn / rho;
    hermitize(V);
    V.diagonal().setOnes();

    Zprev = Z;
    Z = project_psd(V + U, es);
    hermitize(Z);
    U += V - Z;

    sol.primal_residual = (V - Z).norm() / nn;
    sol.dual_residual = rho * (Z - Zprev).norm() / nn;
    sol.iterations = it;
    if (sol.primal_residual <= opt.tol && sol.dual_residual <= opt.tol) {
      sol.converged = true;
      break;
    }
    // residual balancing, only when the two residuals drift far apart
    if (it % 50 == 0) {
      if (sol.primal_residual > 100.0 * sol.dual_residual) {
        rho *= 2.0;
        U /= 2.0;
      } else if (sol.dual_residual > 100.0 * sol.primal_residual) {
        rho /= 2.0;
        U *= 2.0;
      }
    }
  }

  sol.V = unit_diagonal(Z);
  return sol;
}

CMat factor_of(const HomogenizedObjective& obj, const CMat& Dn, double scale) {
  if (obj.W.rows() == Dn.rows() && obj.W.cols() > 0) return obj.W / std::sqrt(scale);
  // D + shift I is PSD; the shift only adds shift * n to the objective on the
  // feasible set and cancels in the row updates
  const Eigen::Index n = Dn.rows();
  HermitianEig es(n);
  es.compute(Dn);
  const double shift = std::max(0.0, -es.values()(0));
  const double top = es.values()(n - 1) + shift;
  Eigen::Index keep = 0;
  while (keep < n && es.values()(n - 1 - keep) + shift > 1e-14 * top) ++keep;
  keep = std::max<Eigen::Index>(keep, 1);
  CMat W = es.vectors().rightCols(keep);
  for (Eigen::Index k = 0; k < keep; ++k) W.col(k) *= std::sqrt(std::max(es.values()(n - keep + k) + shift, 0.0));
  return W;
}

void normalize_rows(CMat& Y) {
  for (Eigen::Index i = 0; i < Y.rows(); ++i) {
    const double nr = Y.row(i).norm();
    if (nr > 0.0) {
      Y.row(i) /= nr;
    } else {
      Y.row(i).setZero();
      Y(i, 0) = 1.0;
    }
  }
}

SdpSolution solve_low_rank(const HomogenizedObjective& obj, double scale, const SdpOptions& opt) {
  const Eigen::Index n = obj.D.rows();
  const CMat Dn = obj.D / scale;
  const CMat W = factor_of(obj, Dn, scale);
  const Eigen::VectorXd dii = W.rowwise().squaredNorm();

  Eigen::Index p = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(std::ceil(std::sqrt(2.0 * n))) + 1);
  Rng rng(0x6a09e667f3bcc909ULL);  // fixed: the solver is deterministic
  CMat Y(n, p);
  for (Eigen::Index c = 0; c < p; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) Y(r, c) = rng.complex_normal();
  }
  normalize_rows(Y);

  SdpSolution sol;
  double f_prev = -std::numeric_limits<double>::infinity();
  std::size_t last_check = 0;
  CRowVec g(p);
  for (std::size_t sweep = 1; sweep <= opt.max_iter; ++sweep) {
    CMat C = W.adjoint() * Y;  // recomputed each sweep to shed rounding drift
    for (Eigen::Index i = 0; i < n; ++i) {
      g.noalias() = W.row(i) * C;
      g -= dii(i) * Y.row(i);
      const double ng = g.norm();
      if (!(ng > 0.0)) continue;
      const CRowVec delta = g / ng - Y.row(i);
      C.noalias() += W.row(i).adjoint() * delta;
      Y.row(i) += delta;
    }
    sol.iterations = sweep;
    const double f = (W.adjoint() * Y).squaredNorm();
    const double gain = f - f_prev;
    f_prev = f;
    if (gain > 1e-3 * opt.tol * std::abs(f) && sweep - last_check < 25) continue;
    last_check = sweep;

    const CMat V = Y * Y.adjoint();
    const double primal = trace_product(Dn, V);
    const double bound = relaxation_upper_bound(Dn, V);
    sol.dual_residual = (bound - primal) / std::max(std::abs(primal), 1e-300);
    if (sol.dual_residual <= opt.tol) {
      sol.converged = true;
      break;
    }
    if (gain <= 1e-13 * std::abs(f)) {
      // stationary but not optimal: lift into a larger factor
      if (p == n) break;
      const Eigen::Index p2 = std::min(n, 2 * p);
      CMat Y2 = CMat::Zero(n, p2);
      Y2.leftCols(p) = Y;
      for (Eigen::Index c = p; c < p2; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) Y2(r, c) = 1e-3 * rng.complex_normal();
      }
      normalize_rows(Y2);
      Y = std::move(Y2);
      p = p2;
      g.resize(p);
      f_prev = -std::numeric_limits<double>::infinity();
    }
  }
  sol.V = Y * Y.adjoint();
  for (Eigen::Index i = 0; i < n; ++i) sol.V(i, i) = 1.0;
  return sol;
}

}  // namespace

const char* to_string(SdpMethod m) { return m == SdpMethod::Admm ? "admm" : "low_rank"; }

SdpMethod parse_sdp_method(const std::string& s) {
  if (s == "low_rank") return SdpMethod::LowRank;
  if (s == "admm") return SdpMethod::Admm;
  throw ConfigError("unknown sdp method '" + s + "' (expected low_rank or admm)");
}

double relaxation_upper_bound(const CMat& D, const CMat& V) {
  const Eigen::Index n = D.rows();
  if (V.rows() != n || V.cols() != n || D.cols() != n) throw std::invalid_argument("relaxation bound: size mismatch");
  const Eigen::VectorXd lambda = (D.array() * V.transpose().array()).rowwise().sum().real();
  CMat S = -D;
  S.diagonal() += lambda.cast<cdouble>();
  HermitianEig es(n);
  es.compute(S, false);
  return lambda.sum() + static_cast<double>(n) * std::max(0.0, -es.values()(0));
}

SdpSolution solve_sdp(const HomogenizedObjective& obj, const SdpOptions& opt) {
  const CMat& D = obj.D;
  const Eigen::Index n = D.rows();
  if (n == 0 || D.cols() != n) throw std::invalid_argument("solve_sdp: D must be square and non-empty");
  if ((D - D.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, D.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("solve_sdp: D is not Hermitian");
  }

  const double scale = D.diagonal().real().cwiseAbs().maxCoeff();
  SdpSolution sol;
  if (n == 1 || !(scale > 0.0)) {
    // fully pinned, or nothing to maximize: any rank-1 unit-modulus point is optimal
    sol.V = CMat::Ones(n, n);
    sol.converged = true;
  } else if (opt.method == SdpMethod::Admm) {
    sol = solve_admm(D, scale, opt);
  } else {
    sol = solve_low_rank(obj, scale, opt);
  }
  sol.objective = trace_product(D, sol.V);
  sol.dual_bound = n == 1 || !(scale > 0.0) ? sol.objective : scale * relaxation_upper_bound(D / scale, sol.V);
  return sol;
}

RandomizationResult randomize(const SdpSolution& sol, std::size_t draws, const HomogenizedObjective& obj, Rng& rng) {
  if (draws == 0) throw std::invalid_argument("randomize: need at least one draw");
  const Eigen::Index n = sol.V.rows();
  if (n != obj.D.rows()) throw std::invalid_argument("randomize: V and D sizes differ");
  const Eigen::Index N = n - 1;

  HermitianEig es(n);
  es.compute(sol.V);
  CMat L = es.vectors();
  // eigenvalues at round-off level carry no direction, only noise
  const double floor = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                       std::max(es.values().cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  for (Eigen::Index k = 0; k < n; ++k) {
    const double ev = es.values()(k);
    L.col(k) *= ev > floor ? std::sqrt(ev) : 0.0;
  }

  RandomizationResult best;
  best.objective = -std::numeric_limits<double>::infinity();
  CColVec e(n);
  CRowVec q(N);
  for (std::size_t r = 0; r < draws; ++r) {
    for (Eigen::Index k = 0; k < n; ++k) e(k) = rng.complex_normal(1.0);
    const CColVec v = L * e;
    if (std::abs(v(N)) == 0.0) continue;
    // v is a column of V's factor, i.e. the conjugate of the row vector [q, t]
    for (Eigen::Index k = 0; k < N; ++k) {
      const cdouble z = std::conj(v(k)) * v(N);
      q(k) = std::abs(z) > 0.0 ? z / std::abs(z) : cdouble(1.0);
    }
    ++best.usable_draws;
    const double f = obj.evaluate(q);
    if (f > best.objective) {
      best.objective = f;
      best.q = q;
      best.best_draw = r;
    }
  }
  if (best.usable_draws == 0) throw NumericalError("randomize: every draw had a zero auxiliary coordinate");
  return best;
}

PhaseSolution optimize_phases(const NetworkSnapshot& snap, const PhaseOptimizerConfig& cfg, Rng& rng) {
  snap.validate();
  if (snap.iots() == 0) throw std::invalid_argument("optimize_phases: snapshot has no IoTs");
  const HomogenizedObjective obj = build_D(snap.Hd, snap.G, snap.tx_power);
  const auto N = static_cast<Eigen::Index>(obj.elements());

  PhaseSolution out;
  out.sdp = solve_sdp(obj, cfg.sdp);
  out.relaxation_bound = out.sdp.objective;
  if (!cfg.debug_dump_path.empty()) dump_sdp_diagnostics(cfg.debug_dump_path, obj, out.sdp);

  out.objective = -std::numeric_limits<double>::infinity();
  try {
    const RandomizationResult rr = randomize(out.sdp, cfg.randomization_draws, obj, rng);
    out.q = rr.q;
    out.objective = rr.objective;
  } catch (const NumericalError&) {
    // handled by the trivial candidates below
  }
  for (double sign : {1.0, -1.0}) {
    const CRowVec trivial = CRowVec::Constant(N, cdouble(sign));
    const double f = obj.evaluate(trivial);
    if (f > out.objective) {
      out.objective = f;
      out.q = trivial;
      out.used_fallback = true;
    }
  }
  out.capacity = sum_capacity(snap, out.q);
  return out;
}

BruteForceResult brute_force_phases(const NetworkSnapshot& snap, std::size_t levels) {
  snap.validate();
  if (levels == 0) throw std::invalid_argument("brute force: levels must be >= 1");
  const std::size_t N = snap.elements();
  if (std::pow(static_cast<double>(levels), static_cast<double>(N)) > 1e8) {
    throw std::invalid_argument("brute force: levels^N exceeds 1e8");
  }

  std::vector<cdouble> alphabet(levels);
  for (std::size_t k = 0; k < levels; ++k) {
    alphabet[k] = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(levels));
  }

  std::vector<std::size_t> digit(N, 0);
  CRowVec q = CRowVec::Ones(static_cast<Eigen::Index>(N));
  BruteForceResult best;
  best.objective = -std::numeric_limits<double>::infinity();
  while (true) {
    const double f = received_energy(snap, q);
    if (f > best.objective) {
      best.objective = f;
      best.q = q;
    }
    std::size_t pos = 0;
    while (pos < N && ++digit[pos] == levels) {
      digit[pos] = 0;
      q(static_cast<Eigen::Index>(pos)) = alphabet[0];
      ++pos;
    }
    if (pos == N) break;
    q(static_cast<Eigen::Index>(pos)) = alphabet[digit[pos]];
  }
  best.capacity = sum_capacity(snap, best.q);
  return best;
}

void dump_sdp_diagnostics(const std::string& path, const HomogenizedObjective& obj, const SdpSolution& sol) {
  const auto matrix = [](const CMat& A) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < A.cols(); ++c) row.push_back({A(r, c).real(), A(r, c).imag()});
      rows.push_back(std::move(row));
    }
    return rows;
  };
  nlohmann::json j;
  j["D"] = matrix(obj.D);
  j["V"] = matrix(sol.V);
  j["objective"] = sol.objective;
  j["iterations"] = sol.iterations;
  j["primal_residual"] = sol.primal_residual;
  j["dual_residual"] = sol.dual_residual;
  j["converged"] = sol.converged;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write SDP diagnostics to " + path);
  out << j.dump(1) << '\n';
}

}  // namespace marisim
