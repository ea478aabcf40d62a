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

#include "marisim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "marisim/estimation.hpp"
#include "marisim/ris_system.hpp"

namespace marisim {

namespace {

// Independent sub-streams of one trial. Keeping them apart means that changing
// N or P_max does not shift the deployment or the wave draws.
enum Purpose : std::uint64_t { kDeploy = 0, kClock = 1, kDirect = 2, kRis = 3, kSounding = 4, kOptimizer = 5 };

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

double squared_norm_ratio(double err, double ref) { return ref > 0.0 ? err / ref : 0.0; }

std::size_t worker_count(std::size_t requested, std::size_t jobs) {
  std::size_t n = requested;
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(n, jobs));
}

}  // namespace

const char* to_string(CsiMode m) {
  switch (m) {
    case CsiMode::LeastSquares: return "ls";
    case CsiMode::Noiseless: return "noiseless";
    case CsiMode::Perfect: return "perfect";
  }
  return "?";
}

CsiMode parse_csi_mode(const std::string& s) {
  if (s == "ls") return CsiMode::LeastSquares;
  if (s == "noiseless") return CsiMode::Noiseless;
  if (s == "perfect") return CsiMode::Perfect;
  throw ConfigError("unknown csi mode '" + s + "' (expected ls, noiseless or perfect)");
}

void ScenarioConfig::validate() const {
  try {
    sea_states.lookup(sea_state);
  } catch (const std::out_of_range&) {
    throw ConfigError("sea_state " + std::to_string(sea_state) + " is not in the sea-state table");
  }
  const GeometryConfig& g = geometry;
  require(std::isfinite(g.turbine.x) && std::isfinite(g.turbine.y), "turbine position must be finite");
  require(g.ris_height >= 20.0 && g.ris_height <= 50.0, "ris_height_m must lie in [20, 50]");
  require(positive_finite(g.turbine_diameter), "turbine_diameter_m must be > 0");
  require(positive_finite(g.rx_distance), "rx_distance_m must be > 0");
  require(positive_finite(g.deployment_radius), "deployment_radius_m must be > 0");
  require(positive_finite(g.mean_iot_count), "mean_iot_count must be > 0");
  require(positive_finite(g.iot_mast_height), "iot_mast_height_m must be > 0");
  require(positive_finite(g.rx_mast_height), "rx_mast_height_m must be > 0");
  require(g.rx_distance > 0.5 * g.turbine_diameter, "centre buoy must sit outside the turbine");

  require(radio.rx_antennas >= 1, "rx_antennas must be >= 1");
  require(radio.ris_elements >= 1, "ris_elements must be >= 1");
  require(positive_finite(radio.noise_power_w), "noise power must be > 0");
  require(positive_finite(radio.bandwidth_hz), "bandwidth_hz must be > 0");
  try {
    radio.path_loss.validate();
    energy.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  require(estimation.subframes == 0 || estimation.subframes >= radio.ris_elements,
          "subframes must be 0 (= N) or >= ris_elements");
  require(optimizer.randomization_draws >= 1, "randomization_draws must be >= 1");
  require(optimizer.sdp.max_iter >= 1, "sdp_max_iter must be >= 1");
  require(positive_finite(optimizer.sdp.tol), "sdp_tol must be > 0");
  require(positive_finite(interval_s), "interval_s must be > 0");
}

const char* to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::Ok: return "ok";
    case TrialStatus::NoActiveIoT: return "no_active_iot";
    case TrialStatus::EstimationFailed: return "estimation_failed";
  }
  return "?";
}

double TrialRecord::los_fraction() const {
  if (los.empty()) return 0.0;
  return static_cast<double>(std::count(los.begin(), los.end(), true)) / static_cast<double>(los.size());
}

double TrialRecord::mean_tx_power() const {
  if (tx_power_w.empty()) return 0.0;
  double s = 0.0;
  for (double p : tx_power_w) s += p;
  return s / static_cast<double>(tx_power_w.size());
}

std::vector<FloatingNode> deploy_iots(double mean_count, double radius, Point2 center, double mast_height, Rng& rng) {
  if (!positive_finite(mean_count)) throw std::invalid_argument("deploy_iots: mean count must be > 0");
  if (!positive_finite(radius)) throw std::invalid_argument("deploy_iots: radius must be > 0");
  const std::uint64_t count = rng.poisson(mean_count);
  std::vector<FloatingNode> nodes;
  nodes.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const double r = radius * std::sqrt(rng.uniform());
    const double phi = rng.uniform(0.0, kTwoPi);
    nodes.push_back({{center.x + r * std::cos(phi), center.y + r * std::sin(phi)}, mast_height, 0.0});
  }
  return nodes;
}

double overhead_factor(std::size_t subframes, std::size_t pilot_length, double bandwidth_hz, double interval_s) {
  const double slots = static_cast<double>(subframes + 2) * static_cast<double>(pilot_length);
  return std::max(0.0, 1.0 - slots / (bandwidth_hz * interval_s));
}

FloatingNode receiver_node(const ScenarioConfig& cfg) {
  const GeometryConfig& g = cfg.geometry;
  return {{g.turbine.x + g.rx_distance, g.turbine.y}, g.rx_mast_height, 0.0};
}

RisConfig ris_for(const ScenarioConfig& cfg) {
  // mounted on the turbine wall on the side facing the centre buoy
  const GeometryConfig& g = cfg.geometry;
  const Point3 c{g.turbine.x + 0.5 * g.turbine_diameter, g.turbine.y, g.ris_height};
  return make_planar_ris(c, 0.0, cfg.radio.ris_elements, 0.5 * cfg.radio.path_loss.wavelength());
}

TrialRecord run_coherence_interval(const ScenarioConfig& cfg, std::size_t interval_idx, std::uint64_t stream_seed) {
  TrialRecord rec;
  rec.interval = interval_idx;
  rec.sea_state = cfg.sea_state;

  const SeaState& state = cfg.sea_states.lookup(cfg.sea_state);
  const WaveField wave = wave_from_sea_state(state, cfg.geometry.wave_source);
  const std::size_t M = cfg.radio.rx_antennas;
  const std::size_t N = cfg.radio.ris_elements;
  const PathLossParams& pl = cfg.radio.path_loss;

  // (1) buoy positions and the instant within the wave period
  Rng deploy_rng(derive_seed(stream_seed, {kDeploy}));
  const std::vector<FloatingNode> iots = deploy_iots(cfg.geometry.mean_iot_count, cfg.geometry.deployment_radius,
                                                     cfg.geometry.turbine, cfg.geometry.iot_mast_height, deploy_rng);
  Rng clock_rng(derive_seed(stream_seed, {kClock}));
  const double t = clock_rng.uniform(0.0, wave.period);
  const FloatingNode rx = receiver_node(cfg);
  const RisConfig ris = ris_for(cfg);

  // (2) energy budget; every buoy sees the same sea
  rec.harvested_w = harvested_power(wave.amplitude, wave.period, cfg.energy);
  const double p_tx = available_tx_power(rec.harvested_w, cfg.energy);

  // (3) true channels, synthesized for every deployed buoy so the streams line up
  Rng direct_rng(derive_seed(stream_seed, {kDirect}));
  Rng ris_rng(derive_seed(stream_seed, {kRis}));
  NetworkSnapshot truth;
  truth.noise_power = cfg.radio.noise_power_w;
  truth.bandwidth = cfg.radio.bandwidth_hz;
  std::vector<CRowVec> direct;
  for (const FloatingNode& iot : iots) {
    const DirectChannel dc = synthesize_direct_channel(iot, rx, wave, t, M, pl, direct_rng);
    const RisChannels rc = synthesize_ris_channels(iot, ris, rx, wave, t, M, pl, ris_rng);
    rec.iot_positions.push_back(iot.position);
    rec.tx_power_w.push_back(p_tx);
    rec.los.push_back(dc.state == LinkState::LoS);
    rec.clamped_links += static_cast<std::size_t>(dc.clamped) + static_cast<std::size_t>(rc.clamped);
    if (p_tx > 0.0) {
      direct.push_back(dc.h);
      truth.G.push_back(cascade(rc.h_r, rc.F));
      truth.tx_power.push_back(p_tx);
    }
  }
  const std::size_t active = direct.size();
  if (active == 0) {
    rec.status = TrialStatus::NoActiveIoT;
    return rec;
  }
  truth.Hd.resize(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(active));
  for (std::size_t i = 0; i < active; ++i) truth.Hd.col(static_cast<Eigen::Index>(i)) = direct[i].adjoint();

  // (4) sounding and least-squares estimation
  const std::size_t B = cfg.estimation.subframes == 0 ? N : cfg.estimation.subframes;
  const std::size_t T = std::max(cfg.estimation.pilot_length, active);
  rec.pilot_slots = (B + 2) * T;
  rec.overhead_factor = overhead_factor(B, T, cfg.radio.bandwidth_hz, cfg.interval_s);

  NetworkSnapshot estimated = truth;
  bool have_estimate = true;
  if (cfg.estimation.mode != CsiMode::Perfect) {
    Rng sounding_rng(derive_seed(stream_seed, {kSounding}));
    try {
      const PilotBook pilots = make_orthogonal_pilots(active, T, truth.tx_power);
      const ReflectionSchedule sched = make_reflection_schedule(N, B);
      const ChannelEstimate est =
          estimate_channels(truth, pilots, sched, sounding_rng, cfg.estimation.mode == CsiMode::Noiseless);
      estimated.Hd = est.Hd;
      estimated.G = est.G;
      rec.direct_nmse = squared_norm_ratio((est.Hd - truth.Hd).squaredNorm(), truth.Hd.squaredNorm());
      double err = 0.0;
      double ref = 0.0;
      for (std::size_t i = 0; i < active; ++i) {
        err += (est.G[i] - truth.G[i]).squaredNorm();
        ref += truth.G[i].squaredNorm();
      }
      rec.cascaded_nmse = squared_norm_ratio(err, ref);
    } catch (const NumericalError&) {
      have_estimate = false;
      rec.status = TrialStatus::EstimationFailed;
    }
  }

  // (5) phases from the estimate; (6) evaluation on the truth
  CRowVec q = CRowVec::Ones(static_cast<Eigen::Index>(N));
  if (have_estimate) {
    Rng opt_rng(derive_seed(stream_seed, {kOptimizer}));
    const PhaseSolution sol = optimize_phases(estimated, cfg.optimizer, opt_rng);
    q = sol.q;
    rec.sdp_iterations = sol.sdp.iterations;
    rec.sdp_converged = sol.sdp.converged;
    rec.used_fallback = sol.used_fallback;
  }
  rec.rate_ris = sum_capacity(truth, q);
  rec.rate_noris = capacity_without_ris(truth);

  // (7) pilot overhead on both rates
  rec.eff_rate_ris = rec.overhead_factor * rec.rate_ris;
  rec.eff_rate_noris = rec.overhead_factor * rec.rate_noris;
  return rec;
}

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::RxMastHeight: return "hr0";
    case SweepVariable::RisElements: return "n";
    case SweepVariable::MaxPower: return "pmax";
    case SweepVariable::SeaState: return "sea";
  }
  return "?";
}

SweepVariable parse_sweep_variable(const std::string& s) {
  if (s == "hr0") return SweepVariable::RxMastHeight;
  if (s == "n") return SweepVariable::RisElements;
  if (s == "pmax") return SweepVariable::MaxPower;
  if (s == "sea") return SweepVariable::SeaState;
  throw ConfigError("unknown sweep variable '" + s + "' (expected hr0, n, pmax or sea)");
}

ScenarioConfig apply_sweep_value(const ScenarioConfig& base, SweepVariable var, double value) {
  ScenarioConfig cfg = base;
  auto as_count = [&](const char* name) {
    if (!(value >= 1.0) || value != std::floor(value) || value > 1e6) {
      throw ConfigError(std::string(name) + " sweep values must be positive integers");
    }
    return static_cast<std::size_t>(value);
  };
  switch (var) {
    case SweepVariable::RxMastHeight: cfg.geometry.rx_mast_height = value; break;
    case SweepVariable::RisElements: cfg.radio.ris_elements = as_count("n"); break;
    case SweepVariable::MaxPower: cfg.energy.p_max_w = value; break;
    case SweepVariable::SeaState:
      if (value != std::floor(value) || value < 0.0 || value > 100.0) {
        throw ConfigError("sea sweep values must be integer sea-state levels");
      }
      cfg.sea_state = static_cast<int>(value);
      break;
  }
  cfg.validate();
  return cfg;
}

SweepCell aggregate_cell(SweepVariable var, double value, int sea_state, std::uint64_t seed,
                         const std::vector<TrialRecord>& trials) {
  SweepCell c;
  c.variable = var;
  c.value = value;
  c.sea_state = sea_state;
  c.seed = seed;
  c.trials = trials.size();
  if (trials.empty()) return c;

  const double n = static_cast<double>(trials.size());
  double sum_ris = 0.0, sum_noris = 0.0, links = 0.0, los = 0.0, power = 0.0;
  for (const TrialRecord& r : trials) {
    sum_ris += r.eff_rate_ris;
    sum_noris += r.eff_rate_noris;
    links += static_cast<double>(r.los.size());
    los += static_cast<double>(std::count(r.los.begin(), r.los.end(), true));
    for (double p : r.tx_power_w) power += p;
  }
  c.mean_rate_ris = sum_ris / n;
  c.mean_rate_noris = sum_noris / n;
  c.mean_los_prob = links > 0.0 ? los / links : 0.0;
  c.mean_tx_power_w = links > 0.0 ? power / links : 0.0;
  if (trials.size() > 1) {
    double ss_ris = 0.0, ss_noris = 0.0;
    for (const TrialRecord& r : trials) {
      ss_ris += (r.eff_rate_ris - c.mean_rate_ris) * (r.eff_rate_ris - c.mean_rate_ris);
      ss_noris += (r.eff_rate_noris - c.mean_rate_noris) * (r.eff_rate_noris - c.mean_rate_noris);
    }
    c.std_rate_ris = std::sqrt(ss_ris / (n - 1.0));
    c.std_rate_noris = std::sqrt(ss_noris / (n - 1.0));
  }
  return c;
}

SweepTable run_sweep(const ScenarioConfig& cfg, const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep needs at least one value");
  if (spec.trials == 0) throw ConfigError("sweep needs at least one trial per point");
  cfg.validate();

  struct Cell {
    double value;
    int sea;
  };
  std::vector<Cell> cells;
  for (double v : spec.values) {
    if (spec.variable == SweepVariable::SeaState) {
      cells.push_back({v, static_cast<int>(v)});
    } else if (spec.sea_states.empty()) {
      cells.push_back({v, cfg.sea_state});
    } else {
      for (int s : spec.sea_states) cells.push_back({v, s});
    }
  }

  SweepTable table;
  for (const Cell& cell : cells) {
    try {
      ScenarioConfig base = cfg;
      base.sea_state = cell.sea;
      const ScenarioConfig c = apply_sweep_value(base, spec.variable, cell.value);

      std::vector<TrialRecord> records(spec.trials);
      std::vector<std::exception_ptr> errors(spec.trials);
      std::atomic<std::size_t> next{0};
      auto work = [&] {
        for (std::size_t k = next++; k < spec.trials; k = next++) {
          try {
            const auto seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(cell.sea), k});
            records[k] = run_coherence_interval(c, k, seed);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        }
      };
      const std::size_t workers = worker_count(cfg.threads, spec.trials);
      if (workers == 1) {
        work();
      } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
      }
      for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
      }
      table.cells.push_back(aggregate_cell(spec.variable, cell.value, cell.sea, cfg.seed, records));
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "sweep cell " << to_string(spec.variable) << "=" << format_double(cell.value) << " sea_state=" << cell.sea
          << " failed: " << e.what();
      throw SweepFailure(table, std::current_exception(), msg.str());
    }
  }
  return table;
}

ResultFormat parse_result_format(const std::string& s) {
  if (s == "csv") return ResultFormat::Csv;
  if (s == "structured") return ResultFormat::Structured;
  throw ConfigError("unknown output format '" + s + "' (expected csv or structured)");
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const SweepTable& table) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const SweepCell& c : table.cells) {
    out += to_string(c.variable);
    for (double v : {c.value, static_cast<double>(c.sea_state), c.mean_rate_ris, c.std_rate_ris, c.mean_rate_noris,
                     c.std_rate_noris, c.mean_los_prob, c.mean_tx_power_w}) {
      out += ',';
      out += format_double(v);
    }
    out += ',' + std::to_string(c.trials) + ',' + std::to_string(c.seed) + '\n';
  }
  return out;
}

std::string to_structured(const SweepTable& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SweepCell& c : table.cells) {
    rows.push_back({{"sweep_var", to_string(c.variable)},
                    {"value", c.value},
                    {"sea_state", c.sea_state},
                    {"mean_rate_ris", c.mean_rate_ris},
                    {"std_rate_ris", c.std_rate_ris},
                    {"mean_rate_noris", c.mean_rate_noris},
                    {"std_rate_noris", c.std_rate_noris},
                    {"mean_los_prob", c.mean_los_prob},
                    {"mean_tx_power_w", c.mean_tx_power_w},
                    {"trials", c.trials},
                    {"seed", c.seed}});
  }
  nlohmann::ordered_json doc{{"cells", rows}};
  return doc.dump(2) + "\n";
}

SweepTable parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("parse_csv: missing or wrong header");

  auto parse_num = [](const std::string& field, auto& out) {
    const auto res = std::from_chars(field.data(), field.data() + field.size(), out);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
      throw std::invalid_argument("parse_csv: bad number '" + field + "'");
    }
  };

  SweepTable table;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    for (;;) {
      const std::size_t comma = line.find(',', pos);
      f.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (f.size() != 11) throw std::invalid_argument("parse_csv: line " + std::to_string(lineno) + " needs 11 fields");
    SweepCell c;
    c.variable = parse_sweep_variable(f[0]);
    parse_num(f[1], c.value);
    double sea = 0.0;
    parse_num(f[2], sea);
    c.sea_state = static_cast<int>(sea);
    parse_num(f[3], c.mean_rate_ris);
    parse_num(f[4], c.std_rate_ris);
    parse_num(f[5], c.mean_rate_noris);
    parse_num(f[6], c.std_rate_noris);
    parse_num(f[7], c.mean_los_prob);
    parse_num(f[8], c.mean_tx_power_w);
    parse_num(f[9], c.trials);
    parse_num(f[10], c.seed);
    table.cells.push_back(c);
  }
  return table;
}

void emit_results(const SweepTable& table, const std::string& path, ResultFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << (format == ResultFormat::Csv ? to_csv(table) : to_structured(table));
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace marisim
