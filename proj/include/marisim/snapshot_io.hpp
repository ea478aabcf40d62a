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

#include "marisim/ris_system.hpp"

namespace marisim {

/// JSON form of a snapshot. Complex entries are [re, im] pairs; matrices are
/// row-major nested arrays.
std::string snapshot_to_json(const NetworkSnapshot& snap);
/// Throws ConfigError on malformed input; the result has been validated.
NetworkSnapshot snapshot_from_json(const std::string& text);

void save_snapshot(const NetworkSnapshot& snap, const std::string& path);
NetworkSnapshot load_snapshot(const std::string& path);

}  // namespace marisim
