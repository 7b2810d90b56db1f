// Copyright 2026 The CNMA Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "cnma/milp.hpp"

namespace cnma {

/// Emits the textual LP file format (Maximize/Minimize, Subject To, Bounds,
/// Generals, Binaries, End). Variable names outside the format's charset are
/// sanitized with a reversible _v<index> suffix.
std::string export_lp_format(const Milp& milp);

/// Parses the subset of the LP format that export_lp_format emits; used to
/// cross-check exports round-trip to an equivalent program.
Milp parse_lp_format(const std::string& text);

}  // namespace cnma
