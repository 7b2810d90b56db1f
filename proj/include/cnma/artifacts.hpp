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

#include "cnma/engine.hpp"

namespace cnma {

class TraceIoError : public std::runtime_error {
 public:
  explicit TraceIoError(const std::string& what) : std::runtime_error(what) {}
};

/// Columns: iteration, wall_seconds, cumulative_evaluations, best_objective
/// (empty until the first feasible incumbent), event, worker_id.
void write_trace_csv(const std::string& path, const RunTrace& trace);
RunTrace read_trace_csv(const std::string& path);

/// Best solution, termination reason, evaluation count, and a config echo
/// sufficient to reproduce the run with the same build.
nlohmann::json result_to_json(const RunResult& result,
                              const nlohmann::json& config_echo);
void write_result_json(const std::string& path, const RunResult& result,
                       const nlohmann::json& config_echo);

struct TraceSummary {
  std::string label;
  double best_objective = 0.0;
  bool has_best = false;
  long evaluations_to_best = 0;
  double seconds_to_best = 0.0;
  long total_evaluations = 0;
  double total_seconds = 0.0;
};

struct ComparisonSummary {
  std::vector<TraceSummary> entries;  // ranked best-first
};

/// Summarizes each trace by its final incumbent and the first row attaining
/// it, then ranks entries best-first for the given sense.
ComparisonSummary compare_traces(
    const std::vector<std::pair<std::string, RunTrace>>& traces, Sense sense);

std::string render_comparison_table(const ComparisonSummary& summary);
void write_comparison_csv(const std::string& path,
                          const ComparisonSummary& summary);

/// Plot-ready incumbent series (evaluations, seconds, best_objective),
/// thinned to at most max_points rows while keeping the first and last.
void write_series_csv(const std::string& path, const RunTrace& trace,
                      int max_points = 500);

}  // namespace cnma
