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
#include <exception>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "marisim/channel.hpp"
#include "marisim/energy.hpp"
#include "marisim/optimizer.hpp"
#include "marisim/rng.hpp"
#include "marisim/sea_surface.hpp"

namespace marisim {

struct GeometryConfig {
  Point2 turbine{0.0, 0.0};
  double ris_height = 35.0;        // RIS centre above mean sea level, m
  double turbine_diameter = 6.0;   // m
  double rx_distance = 200.0;      // turbine -> centre buoy, m (buoy placed along +x)
  double deployment_radius = 200.0;
  double mean_iot_count = 4.0;
  double iot_mast_height = 2.0;  // h_t^0
  double rx_mast_height = 5.0;   // h_r^0
  Point2 wave_source = kDefaultWaveSource;
};

struct RadioConfig {
  PathLossParams path_loss;
  std::size_t rx_antennas = 8;     // M
  std::size_t ris_elements = 360;  // N
  double noise_power_w = 7.943282347242822e-14;  // -131 dBW
  double bandwidth_hz = 5e6;
};

/// ls: noisy least squares; noiseless: least squares on noise-free pilots;
/// perfect: genie CSI (the sounding overhead is still charged).
enum class CsiMode { LeastSquares, Noiseless, Perfect };

const char* to_string(CsiMode m);
CsiMode parse_csi_mode(const std::string& s);

struct EstimationConfig {
  std::size_t subframes = 0;     // B; 0 means B = N
  std::size_t pilot_length = 0;  // T; 0 means T = number of active IoTs
  CsiMode mode = CsiMode::LeastSquares;
};

struct ScenarioConfig {
  int sea_state = 4;
  GeometryConfig geometry;
  RadioConfig radio;
  WecParams energy;
  EstimationConfig estimation;
  PhaseOptimizerConfig optimizer;
  double interval_s = 0.1;  // coherence interval
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  SeaStateTable sea_states = SeaStateTable::builtin();

  /// Throws ConfigError on non-physical values.
  void validate() const;
};

enum class TrialStatus { Ok, NoActiveIoT, EstimationFailed };

const char* to_string(TrialStatus s);

struct TrialRecord {
  std::size_t interval = 0;
  int sea_state = 0;
  std::vector<Point2> iot_positions;
  std::vector<double> tx_power_w;
  std::vector<bool> los;
  double harvested_w = 0.0;
  double direct_nmse = 0.0;    // ||H_d_hat - H_d||^2 / ||H_d||^2
  double cascaded_nmse = 0.0;  // pooled over IoTs
  double rate_ris = 0.0;       // bits/s on true channels
  double rate_noris = 0.0;
  double overhead_factor = 1.0;
  double eff_rate_ris = 0.0;
  double eff_rate_noris = 0.0;
  std::size_t pilot_slots = 0;
  std::size_t sdp_iterations = 0;
  bool sdp_converged = true;
  bool used_fallback = false;
  std::size_t clamped_links = 0;
  TrialStatus status = TrialStatus::Ok;

  /// Fraction of IoTs with a LoS direct link; NaN-free (0 when no IoTs).
  double los_fraction() const;
  double mean_tx_power() const;
};

/// Poisson count, uniform positions on the disk, masts at `mast_height`.
std::vector<FloatingNode> deploy_iots(double mean_count, double radius, Point2 center, double mast_height, Rng& rng);

/// Fraction of the coherence interval left for data after (B + 2) T pilot slots.
double overhead_factor(std::size_t subframes, std::size_t pilot_length, double bandwidth_hz, double interval_s);

/// Centre buoy and RIS placement derived from the geometry config.
FloatingNode receiver_node(const ScenarioConfig& cfg);
RisConfig ris_for(const ScenarioConfig& cfg);

/// One block-fading interval: deploy, harvest, synthesize, sound, estimate,
/// optimize on the estimate, evaluate on the truth. All randomness derives from
/// `stream_seed`.
TrialRecord run_coherence_interval(const ScenarioConfig& cfg, std::size_t interval_idx, std::uint64_t stream_seed);

enum class SweepVariable { RxMastHeight, RisElements, MaxPower, SeaState };

const char* to_string(SweepVariable v);
/// Accepts the CLI spellings hr0 | n | pmax | sea.
SweepVariable parse_sweep_variable(const std::string& s);

struct SweepSpec {
  SweepVariable variable = SweepVariable::RxMastHeight;
  std::vector<double> values;
  /// Sea states evaluated per value; ignored when sweeping the sea state itself.
  std::vector<int> sea_states;
  std::size_t trials = 1;
};

struct SweepCell {
  SweepVariable variable = SweepVariable::RxMastHeight;
  double value = 0.0;
  int sea_state = 0;
  double mean_rate_ris = 0.0;
  double std_rate_ris = 0.0;
  double mean_rate_noris = 0.0;
  double std_rate_noris = 0.0;
  double mean_los_prob = 0.0;
  double mean_tx_power_w = 0.0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

struct SweepTable {
  std::vector<SweepCell> cells;
};

/// Raised by run_sweep when a cell fails; carries every cell completed before it.
class SweepFailure : public std::runtime_error {
 public:
  SweepFailure(SweepTable partial, std::exception_ptr cause, const std::string& what)
      : std::runtime_error(what), partial_(std::move(partial)), cause_(std::move(cause)) {}
  const SweepTable& partial() const { return partial_; }
  std::exception_ptr cause() const { return cause_; }

 private:
  SweepTable partial_;
  std::exception_ptr cause_;
};

/// Applies one sweep value to a copy of the config.
ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepVariable var, double value);

/// Trial k of sea state s uses stream derive_seed(seed, {s, k}) for every sweep
/// value, so points along a sweep share deployments and wave phases.
/// Trials run on `cfg.threads` workers; results are reduced in index order.
SweepTable run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec);

/// Aggregates per-trial records into a cell (sample std, n - 1).
SweepCell aggregate_cell(SweepVariable var, double value, int sea_state, std::uint64_t seed,
                         const std::vector<TrialRecord>& trials);

enum class ResultFormat { Csv, Structured };

ResultFormat parse_result_format(const std::string& s);

inline constexpr const char* kCsvHeader =
    "sweep_var,value,sea_state,mean_rate_ris,std_rate_ris,mean_rate_noris,std_rate_noris,"
    "mean_los_prob,mean_tx_power_w,trials,seed";

std::string to_csv(const SweepTable& table);
std::string to_structured(const SweepTable& table);
/// Inverse of to_csv; values round-trip bit-exactly.
SweepTable parse_csv(const std::string& text);

/// Writes the table; I/O failures are reported with the path.
void emit_results(const SweepTable& table, const std::string& path, ResultFormat format);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace marisim
