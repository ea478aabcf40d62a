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

// marisim: sweeps, LoS statistics, path-loss tables and self-checks.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "marisim/channel.hpp"
#include "marisim/config.hpp"
#include "marisim/harness.hpp"
#include "marisim/sea_surface.hpp"
#include "marisim/validate.hpp"

namespace {

using namespace marisim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

ScenarioConfig config_or_default(const std::string& path) {
  return path.empty() ? ScenarioConfig{} : load_config(path);
}

void write_text(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

int exit_code_for(std::exception_ptr e) {
  try {
    std::rethrow_exception(e);
  } catch (const NumericalError& ex) {
    std::cerr << "numerical failure: " << ex.what() << "\n";
    return kExitNumerical;
  } catch (const ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitConfig;
  }
}

struct SweepArgs {
  std::string config;
  std::string var = "hr0";
  std::vector<double> values;
  std::vector<int> sea_states;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t threads = 0;
  bool threads_set = false;
  std::string out = "-";
  std::string format = "csv";
};

void emit_sweep(const SweepArgs& a, const SweepTable& t) {
  const ResultFormat fmt = parse_result_format(a.format);
  if (a.out == "-") {
    std::cout << (fmt == ResultFormat::Csv ? to_csv(t) : to_structured(t));
    std::cout.flush();
  } else {
    emit_results(t, a.out, fmt);
  }
}

int run_sweep_cmd(const SweepArgs& a) {
  ScenarioConfig cfg = config_or_default(a.config);
  if (a.seed_set) cfg.seed = a.seed;
  if (a.threads_set) cfg.threads = a.threads;
  parse_result_format(a.format);
  const SweepSpec spec{parse_sweep_variable(a.var), a.values, a.sea_states, a.trials};
  try {
    emit_sweep(a, run_sweep(cfg, spec));
  } catch (const SweepFailure& f) {
    emit_sweep(a, f.partial());  // completed cells are kept
    std::cerr << f.what() << "\n";
    return exit_code_for(f.cause());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-assisted maritime IoT uplink simulator"};
  app.require_subcommand(1);

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep of one scenario parameter");
  sweep->add_option("--config", sw.config, "scenario JSON file")->check(CLI::ExistingFile);
  sweep->add_option("--var", sw.var, "swept variable")->check(CLI::IsMember({"hr0", "n", "pmax", "sea"}));
  sweep->add_option("--values", sw.values, "comma-separated values")->delimiter(',')->required();
  sweep->add_option("--sea-states", sw.sea_states, "sea states per value (default: config)")->delimiter(',');
  sweep->add_option("--trials", sw.trials, "coherence intervals per cell")->check(CLI::PositiveNumber);
  auto* seed_opt = sweep->add_option("--seed", sw.seed, "base seed (overrides config)");
  auto* thr_opt = sweep->add_option("--threads", sw.threads, "worker threads, 0 = all cores (overrides config)");
  sweep->add_option("--out", sw.out, "output path, - for stdout");
  sweep->add_option("--format", sw.format, "csv or structured")->check(CLI::IsMember({"csv", "structured"}));

  std::string lp_config;
  std::vector<int> lp_states{2, 3, 4, 5, 6, 7, 8, kSeaStateAbove8};
  std::vector<double> lp_heights{2, 5, 10, 20, 30};
  std::size_t lp_samples = 10000;
  double lp_distance = 1000.0;
  double lp_tx_mast = 2.0;
  std::uint64_t lp_seed = 1;
  std::string lp_out = "-";
  auto* los = app.add_subcommand("los-prob", "LoS probability versus receiver mast height");
  los->add_option("--config", lp_config, "scenario JSON file (sea-state table)")->check(CLI::ExistingFile);
  los->add_option("--sea-states", lp_states, "sea states")->delimiter(',');
  los->add_option("--heights", lp_heights, "receiver mast heights, m")->delimiter(',');
  los->add_option("--samples", lp_samples, "time samples per point")->check(CLI::PositiveNumber);
  los->add_option("--distance", lp_distance, "link distance, m")->check(CLI::PositiveNumber);
  los->add_option("--tx-height", lp_tx_mast, "transmitter mast height, m")->check(CLI::PositiveNumber);
  los->add_option("--seed", lp_seed, "seed");
  los->add_option("--out", lp_out, "output path, - for stdout");

  std::string pl_config;
  double pl_dmin = 10.0, pl_dmax = 2000.0, pl_step = 10.0, pl_ht = 2.0, pl_hr = 5.0;
  std::string pl_out = "-";
  auto* pl = app.add_subcommand("pathloss", "LoS / NLoS / free-space path loss versus distance (no shadowing)");
  pl->add_option("--config", pl_config, "scenario JSON file (radio parameters)")->check(CLI::ExistingFile);
  pl->add_option("--d-min", pl_dmin, "first distance, m")->check(CLI::PositiveNumber);
  pl->add_option("--d-max", pl_dmax, "last distance, m")->check(CLI::PositiveNumber);
  pl->add_option("--step", pl_step, "distance step, m")->check(CLI::PositiveNumber);
  pl->add_option("--tx-height", pl_ht, "transmit antenna height, m")->check(CLI::PositiveNumber);
  pl->add_option("--rx-height", pl_hr, "receive antenna height, m")->check(CLI::PositiveNumber);
  pl->add_option("--out", pl_out, "output path, - for stdout");

  std::string va_config;
  std::uint64_t va_seed = 1;
  auto* va = app.add_subcommand("validate", "run the invariant suite");
  va->add_option("--config", va_config, "scenario JSON file")->check(CLI::ExistingFile);
  va->add_option("--seed", va_seed, "seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sweep) {
      sw.seed_set = seed_opt->count() > 0;
      sw.threads_set = thr_opt->count() > 0;
      return run_sweep_cmd(sw);
    }
    if (*los) {
      const ScenarioConfig cfg = config_or_default(lp_config);
      std::ostringstream out;
      out << "sea_state,hr0_m,los_probability,samples,distance_m,seed\n";
      for (int s : lp_states) {
        const SeaState& st = cfg.sea_states.lookup(s);
        for (double h : lp_heights) {
          const FloatingNode tx{{0.0, 0.0}, lp_tx_mast, 0.0};
          const FloatingNode rx{{lp_distance, 0.0}, h, 0.0};
          const double p = los_probability(st, tx, rx, lp_samples, lp_seed, cfg.geometry.wave_source);
          out << s << ',' << format_double(h) << ',' << format_double(p) << ',' << lp_samples << ','
              << format_double(lp_distance) << ',' << lp_seed << '\n';
        }
      }
      write_text(out.str(), lp_out);
      return kExitOk;
    }
    if (*pl) {
      if (pl_dmax < pl_dmin) throw ConfigError("--d-max must be >= --d-min");
      const PathLossParams p = config_or_default(pl_config).radio.path_loss;
      std::ostringstream out;
      out << "distance_m,los_db,nlos_db,free_space_db,regime\n";
      const double brk = two_ray_breakpoint(pl_ht, pl_hr, p);
      const auto steps = static_cast<std::size_t>((pl_dmax - pl_dmin) / pl_step + 1e-9);
      for (std::size_t k = 0; k <= steps; ++k) {
        const double d = pl_dmin + static_cast<double>(k) * pl_step;
        const PathLoss los_db = path_loss_los({pl_ht, pl_hr, d, LinkState::LoS}, p, 0.0);
        const double nlos_db = d >= p.reference_distance ? path_loss_nlos(d, p, 0.0) : std::nan("");
        out << format_double(d) << ',' << format_double(los_db.db) << ',' << format_double(nlos_db) << ','
            << format_double(path_loss_free_space(d, p.carrier_hz)) << ',' << (d <= brk ? "two_ray" : "three_ray")
            << '\n';
      }
      write_text(out.str(), pl_out);
      return kExitOk;
    }
    if (*va) {
      const ScenarioConfig cfg = config_or_default(va_config);
      bool ok = true;
      for (const CheckResult& r : run_invariant_suite(cfg, va_seed)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
        std::cout << "\n";
        ok = ok && r.passed;
      }
      return ok ? kExitOk : kExitNumerical;
    }
  } catch (...) {
    return exit_code_for(std::current_exception());
  }
  return kExitOk;
}
