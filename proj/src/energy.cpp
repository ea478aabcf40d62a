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

#include "marisim/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace marisim {

void WecParams::validate() const {
  const auto fraction = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!fraction(eta_pto) || !fraction(eta_conv) || !fraction(gamma_cwr)) {
    throw std::invalid_argument("WEC efficiencies must lie in (0, 1]");
  }
  if (!(width > 0.0) || !(rho > 0.0) || !(g > 0.0)) throw std::invalid_argument("W, rho and g must be > 0");
  if (!(p0_w >= 0.0)) throw std::invalid_argument("P_0 must be >= 0");
  if (!(p_max_w > 0.0)) throw std::invalid_argument("P_max must be > 0");
}

double wave_power_per_meter(double amplitude, double period, const WecParams& p) {
  if (!(amplitude >= 0.0) || !(period > 0.0)) throw std::invalid_argument("wave power needs a >= 0 and T > 0");
  return p.rho * p.g * p.g / (64.0 * std::numbers::pi) * amplitude * amplitude * period;
}

double harvested_power(double amplitude, double period, const WecParams& p) {
  return p.eta_pto * p.eta_conv * p.gamma_cwr * wave_power_per_meter(amplitude, period, p) * p.width;
}

double available_tx_power(double harvested_w, const WecParams& p) {
  return std::max(0.0, std::min(harvested_w - p.p0_w, p.p_max_w));
}

double watts_to_dbw(double w) { return 10.0 * std::log10(w); }
double dbw_to_watts(double dbw) { return std::pow(10.0, dbw / 10.0); }

}  // namespace marisim
