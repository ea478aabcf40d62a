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

#include <string>

#include "marisim/harness.hpp"

namespace marisim {

/// Parses a JSON scenario document. Every key is optional and falls back to the
/// defaults of ScenarioConfig; unknown keys, wrong types and duplicate unit
/// spellings (e.g. both `p_max_w` and `p_max_dbw`) raise ConfigError. The
/// result has been validated.
ScenarioConfig parse_config(const std::string& json_text);

/// Reads and parses a config file; I/O failures raise ConfigError.
ScenarioConfig load_config(const std::string& path);

/// Serializes every field (watt-tagged keys) so that parse_config(dump) == cfg.
std::string dump_config(const ScenarioConfig& cfg);

}  // namespace marisim
