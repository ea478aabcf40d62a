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

// Independent reference computations. Nothing here calls into the library;
// every formula is re-derived with plain loops and std::complex.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Mat = std::vector<std::vector<cd>>;  // row-major

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kC = 299792458.0;

inline double wavelength(double f) { return kC / f; }

// Two-ray / three-ray loss written via the field ratio of direct and reflected rays.
inline double los_loss_db(double d, double ht, double hr, double f, double he) {
  const double lam = wavelength(f);
  const double k = 2.0 * kPi / lam;
  const double base = lam / (2.0 * kPi * d);
  double field;
  if (d <= 4.0 * ht * hr / lam) {
    field = base * std::sin(k * ht * hr / d);
  } else {
    field = base * (1.0 + 2.0 * std::sin(k * ht * hr / d) * std::sin(k * (he - ht) * (he - hr) / d));
  }
  return -10.0 * std::log10(field * field);
}

inline double nlos_loss_db(double d, double K, double alpha, double d0) { return K + alpha * 10.0 * std::log10(d / d0); }

inline double free_space_db(double d, double f) { return 20.0 * std::log10(4.0 * kPi * d * f / kC); }

inline double sea_height(double a, double l, double T, double dist, double t, double h0) {
  return a * std::sin(2.0 * kPi * std::fmod(dist, l) / l + 2.0 * kPi * std::fmod(t, T) / T) + h0;
}

inline double wave_power(double a, double T, double rho = 1025.0, double g = 9.81) {
  return rho * g * g * a * a * T / (64.0 * kPi);
}

inline double harvested(double a, double T, double eta_pto, double eta_conv, double gamma, double width) {
  return eta_pto * eta_conv * gamma * wave_power(a, T) * width;
}

// sum_i P_i || h_i + q G_i ||^2 with h_i a length-M row and G_i N x M.
inline double received_energy(const std::vector<std::vector<cd>>& h, const std::vector<Mat>& G,
                              const std::vector<double>& P, const std::vector<cd>& q) {
  double e = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t m = 0; m < h[i].size(); ++m) {
      cd s = h[i][m];
      for (std::size_t n = 0; n < q.size(); ++n) s += q[n] * G[i][n][m];
      e += P[i] * std::norm(s);
    }
  }
  return e;
}

inline double capacity(double energy, double noise, double beta) { return beta * std::log2(1.0 + energy / noise); }

struct GridResult {
  std::vector<cd> q;
  double energy = -1.0;
};

// Exhaustive search over `levels` uniformly spaced phases per element.
inline GridResult grid_search(const std::vector<std::vector<cd>>& h, const std::vector<Mat>& G,
                              const std::vector<double>& P, std::size_t N, std::size_t levels) {
  GridResult best;
  std::vector<std::size_t> idx(N, 0);
  std::vector<cd> q(N);
  std::size_t total = 1;
  for (std::size_t n = 0; n < N; ++n) total *= levels;
  for (std::size_t c = 0; c < total; ++c) {
    std::size_t r = c;
    for (std::size_t n = 0; n < N; ++n) {
      q[n] = std::polar(1.0, 2.0 * kPi * static_cast<double>(r % levels) / static_cast<double>(levels));
      r /= levels;
    }
    const double e = received_energy(h, G, P, q);
    if (e > best.energy) {
      best.energy = e;
      best.q = q;
    }
  }
  return best;
}

// Solves A x = b (complex, square) by Gaussian elimination with partial pivoting.
inline std::vector<cd> solve(Mat A, std::vector<cd> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(A[r][k]) > std::abs(A[p][k])) p = r;
    }
    std::swap(A[k], A[p]);
    std::swap(b[k], b[p]);
    for (std::size_t r = k + 1; r < n; ++r) {
      const cd f = A[r][k] / A[k][k];
      for (std::size_t c = k; c < n; ++c) A[r][c] -= f * A[k][c];
      b[r] -= f * b[k];
    }
  }
  std::vector<cd> x(n);
  for (std::size_t k = n; k-- > 0;) {
    cd s = b[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= A[k][c] * x[c];
    x[k] = s / A[k][k];
  }
  return x;
}

// Kolmogorov-Smirnov statistic of samples against a continuous CDF.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = cdf(xs[i]);
    d = std::max({d, F - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - F});
  }
  return d;
}

// Critical value of the one-sample KS test at the 1% level (large-n form).
inline double ks_critical_1pct(std::size_t n) { return 1.628 / std::sqrt(static_cast<double>(n)); }

}  // namespace oracle
