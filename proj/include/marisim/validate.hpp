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
#include <string>
#include <vector>

#include "marisim/harness.hpp"

namespace marisim {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast self-check of the model invariants on the given scenario: sea-surface
/// bounds, LoS symmetry, path-loss ordering, energy budget, exact noiseless
/// estimation, optimizer feasibility and dominance, per-interval rate ordering
/// and sweep determinism across thread counts. Takes a few seconds.
std::vector<CheckResult> run_invariant_suite(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace marisim
