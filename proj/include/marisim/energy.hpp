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

namespace marisim {

/// Point-absorber wave energy converter and buoy power budget.
struct WecParams {
  double eta_pto = 0.5;     // power take-off efficiency
  double eta_conv = 0.9;    // onboard electronics efficiency
  double gamma_cwr = 0.082;  // capture width ratio
  double width = 2.0;       // effective interaction width, m
  double rho = 1025.0;      // seawater density, kg/m^3
  double g = 9.81;          // m/s^2
  double p0_w = 5.0;        // operational draw of buoy + sensor, W
  double p_max_w = 100.0;   // transmit power cap (20 dBW), W

  double wave_to_wire() const { return eta_pto * eta_conv * gamma_cwr; }
  void validate() const;
};

/// rho g^2 a^2 T / (64 pi), W per metre of crest.
double wave_power_per_meter(double amplitude, double period, const WecParams& p);

double harvested_power(double amplitude, double period, const WecParams& p);

/// max(0, min(P_e - P_0, P_max)).
double available_tx_power(double harvested_w, const WecParams& p);

double watts_to_dbw(double w);
double dbw_to_watts(double dbw);

}  // namespace marisim
