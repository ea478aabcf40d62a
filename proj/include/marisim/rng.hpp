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

#include <cstdint>
#include <initializer_list>
#include <random>

#include "marisim/types.hpp"

namespace marisim {

/// Mixes a base seed with a list of stream coordinates (cell, trial, purpose, ...)
/// into an independent 64-bit seed. Pure function; used to give every trial its
/// own reproducible RNG stream.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> coords);

/// Seeded random source. Not thread-safe: one instance per stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  cdouble complex_normal(double variance = 1.0) {
    const double s = std::sqrt(variance / 2.0);
    const double re = normal();
    const double im = normal();
    return {s * re, s * im};
  }

  std::uint64_t poisson(double mean) {
    return std::poisson_distribution<std::uint64_t>(mean)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace marisim
