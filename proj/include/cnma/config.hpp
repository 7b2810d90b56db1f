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
#include <vector>

#include <nlohmann/json.hpp>

#include "cnma/parallel.hpp"
#include "cnma/problem.hpp"

namespace cnma {

inline constexpr const char* kConfigSchemaId = "cnma-run/1";

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class EngineKind { kCnma, kParallelCnma, kRandomSearch };

std::string to_string(EngineKind kind);

struct RunConfig {
  std::string benchmark;
  EngineKind engine = EngineKind::kCnma;
  EngineConfig engine_config;
  ParallelConfig parallel_config;  // base mirrors engine_config
  long random_search_budget = 1000;
  std::string output_dir = ".";
  // Extra linear constraints layered onto the benchmark problem.
  std::vector<Constraint> extra_constraints;
  nlohmann::json raw;  // the parsed document, echoed into result.json
};

/// Parses and validates a run configuration document. Throws ConfigError
/// with a human-readable diagnostic on any schema violation.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

}  // namespace cnma
