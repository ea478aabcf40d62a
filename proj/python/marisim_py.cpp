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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "marisim/config.hpp"
#include "marisim/energy.hpp"
#include "marisim/estimation.hpp"
#include "marisim/harness.hpp"
#include "marisim/optimizer.hpp"
#include "marisim/sea_surface.hpp"
#include "marisim/snapshot_io.hpp"
#include "marisim/validate.hpp"

namespace py = pybind11;
using namespace marisim;

namespace {

NetworkSnapshot make_snapshot(const CMat& Hd, const std::vector<CMat>& G, const std::vector<double>& tx_power,
                              double noise_power, double bandwidth) {
  NetworkSnapshot s{Hd, G, tx_power, noise_power, bandwidth};
  s.validate();
  return s;
}

py::dict trial_to_dict(const TrialRecord& r) {
  py::dict d;
  d["interval"] = r.interval;
  d["sea_state"] = r.sea_state;
  d["tx_power_w"] = r.tx_power_w;
  d["los"] = r.los;
  d["harvested_w"] = r.harvested_w;
  d["direct_nmse"] = r.direct_nmse;
  d["cascaded_nmse"] = r.cascaded_nmse;
  d["rate_ris"] = r.rate_ris;
  d["rate_noris"] = r.rate_noris;
  d["overhead_factor"] = r.overhead_factor;
  d["eff_rate_ris"] = r.eff_rate_ris;
  d["eff_rate_noris"] = r.eff_rate_noris;
  d["pilot_slots"] = r.pilot_slots;
  d["sdp_converged"] = r.sdp_converged;
  d["used_fallback"] = r.used_fallback;
  d["status"] = to_string(r.status);
  return d;
}

}  // namespace

PYBIND11_MODULE(marisim, m) {
  m.doc() = "RIS-assisted maritime IoT uplink simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  // sea surface
  m.def(
      "wave",
      [](int level) {
        const WaveField w = wave_from_sea_state(SeaStateTable::builtin().lookup(level));
        return py::dict(py::arg("amplitude") = w.amplitude, py::arg("wavelength") = w.wavelength,
                        py::arg("period") = w.period);
      },
      py::arg("sea_state"), "Amplitude, wavelength and period of a tabulated sea state.");
  m.def(
      "los_probability",
      [](int level, double tx_mast, double rx_mast, double distance, std::size_t samples, std::uint64_t seed) {
        return los_probability(SeaStateTable::builtin().lookup(level), {{0.0, 0.0}, tx_mast},
                               {{distance, 0.0}, rx_mast}, samples, seed);
      },
      py::arg("sea_state"), py::arg("tx_mast_m"), py::arg("rx_mast_m"), py::arg("distance_m") = 1000.0,
      py::arg("samples") = 10000, py::arg("seed") = 1);

  // channel
  m.def(
      "path_loss_los",
      [](double d, double ht, double hr, double xi) {
        return path_loss_los({ht, hr, d, LinkState::LoS}, PathLossParams{}, xi).db;
      },
      py::arg("distance_m"), py::arg("tx_height_m"), py::arg("rx_height_m"), py::arg("xi_db") = 0.0);
  m.def(
      "path_loss_nlos", [](double d, double xi) { return path_loss_nlos(d, PathLossParams{}, xi); },
      py::arg("distance_m"), py::arg("xi_db") = 0.0);
  m.def("path_loss_free_space", &path_loss_free_space, py::arg("distance_m"), py::arg("carrier_hz") = 5.8e9);
  m.def(
      "two_ray_breakpoint", [](double ht, double hr) { return two_ray_breakpoint(ht, hr, PathLossParams{}); },
      py::arg("tx_height_m"), py::arg("rx_height_m"));

  // energy
  m.def(
      "harvested_power", [](double a, double T) { return harvested_power(a, T, WecParams{}); }, py::arg("amplitude_m"),
      py::arg("period_s"));
  m.def(
      "available_tx_power",
      [](double pe, double p0, double pmax) {
        WecParams p;
        p.p0_w = p0;
        p.p_max_w = pmax;
        return available_tx_power(pe, p);
      },
      py::arg("harvested_w"), py::arg("p0_w") = 5.0, py::arg("p_max_w") = 100.0);

  // snapshots and capacity
  py::class_<NetworkSnapshot>(m, "Snapshot")
      .def(py::init(&make_snapshot), py::arg("Hd"), py::arg("G"), py::arg("tx_power"), py::arg("noise_power") = 1.0,
           py::arg("bandwidth") = 1.0)
      .def_readonly("Hd", &NetworkSnapshot::Hd)
      .def_readonly("G", &NetworkSnapshot::G)
      .def_readonly("tx_power", &NetworkSnapshot::tx_power)
      .def_readonly("noise_power", &NetworkSnapshot::noise_power)
      .def_readonly("bandwidth", &NetworkSnapshot::bandwidth)
      .def("to_json", &snapshot_to_json)
      .def_static("from_json", &snapshot_from_json);
  m.def("sum_capacity", &sum_capacity, py::arg("snapshot"), py::arg("q"));
  m.def("capacity_without_ris", &capacity_without_ris, py::arg("snapshot"));
  m.def("aligned_capacity_bound", &aligned_capacity_bound, py::arg("snapshot"));

  // estimation
  m.def(
      "estimate_channels",
      [](const NetworkSnapshot& s, bool noiseless, std::uint64_t seed) {
        const PilotBook pilots = make_orthogonal_pilots(s.iots(), s.iots(), s.tx_power);
        const ReflectionSchedule sched = make_reflection_schedule(s.elements(), s.elements());
        Rng rng(seed);
        const ChannelEstimate e = estimate_channels(s, pilots, sched, rng, noiseless);
        return py::make_tuple(e.Hd, e.G);
      },
      py::arg("snapshot"), py::arg("noiseless") = false, py::arg("seed") = 1,
      "Least-squares (Hd, [G_i]) with T = I pilots and B = N sub-frames.");

  // optimizer
  m.def(
      "optimize_phases",
      [](const NetworkSnapshot& s, std::size_t draws, const std::string& method, std::uint64_t seed) {
        PhaseOptimizerConfig cfg;
        cfg.randomization_draws = draws;
        cfg.sdp.method = parse_sdp_method(method);
        Rng rng(seed);
        const PhaseSolution p = optimize_phases(s, cfg, rng);
        py::dict d;
        d["q"] = p.q;
        d["capacity"] = p.capacity;
        d["objective"] = p.objective;
        d["relaxation_bound"] = p.relaxation_bound;
        d["dual_bound"] = p.sdp.dual_bound;
        d["converged"] = p.sdp.converged;
        d["used_fallback"] = p.used_fallback;
        return d;
      },
      py::arg("snapshot"), py::arg("draws") = 100, py::arg("method") = "low_rank", py::arg("seed") = 1);
  m.def(
      "brute_force_phases",
      [](const NetworkSnapshot& s, std::size_t levels) {
        const BruteForceResult b = brute_force_phases(s, levels);
        return py::dict(py::arg("q") = b.q, py::arg("capacity") = b.capacity, py::arg("objective") = b.objective);
      },
      py::arg("snapshot"), py::arg("levels"));

  // scenarios
  m.def(
      "default_config", [] { return dump_config(ScenarioConfig{}); }, "Default scenario as JSON text.");
  m.def(
      "run_interval",
      [](const std::string& config_json, std::size_t idx, std::uint64_t seed) {
        return trial_to_dict(run_coherence_interval(parse_config(config_json), idx, seed));
      },
      py::arg("config_json"), py::arg("interval") = 0, py::arg("seed") = 1);
  m.def(
      "run_sweep",
      [](const std::string& config_json, const std::string& var, const std::vector<double>& values,
         const std::vector<int>& sea_states, std::size_t trials) {
        const ScenarioConfig cfg = parse_config(config_json);
        SweepTable t;
        {
          py::gil_scoped_release release;
          t = run_sweep(cfg, {parse_sweep_variable(var), values, sea_states, trials});
        }
        return to_csv(t);
      },
      py::arg("config_json"), py::arg("var"), py::arg("values"), py::arg("sea_states") = std::vector<int>{},
      py::arg("trials") = 1, "Runs a sweep and returns the CSV table.");
  m.def(
      "validate",
      [](const std::string& config_json, std::uint64_t seed) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (const CheckResult& c : run_invariant_suite(parse_config(config_json), seed)) {
          out.emplace_back(c.name, c.passed, c.detail);
        }
        return out;
      },
      py::arg("config_json") = "{}", py::arg("seed") = 1);
}
