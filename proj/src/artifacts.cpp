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

#include "cnma/artifacts.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cnma {

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

}  // namespace

void write_trace_csv(const std::string& path, const RunTrace& trace) {
  std::ofstream os(path);
  if (!os) throw TraceIoError("cannot open trace file for writing: " + path);
  os << "iteration,wall_seconds,cumulative_evaluations,best_objective,event,"
        "worker_id\n";
  for (const auto& row : trace.rows) {
    os << row.iteration << ',' << format_double(row.wall_seconds) << ','
       << row.cumulative_evaluations << ',';
    if (row.best_objective) os << format_double(*row.best_objective);
    os << ',' << to_string(row.event) << ',' << row.worker_id << '\n';
  }
}

RunTrace read_trace_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw TraceIoError("cannot open trace file: " + path);
  std::string line;
  if (!std::getline(is, line))
    throw TraceIoError("empty trace file: " + path);
  RunTrace trace;
  int line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 6)
      throw TraceIoError(path + ": line " + std::to_string(line_no) +
                         ": expected 6 fields, got " +
                         std::to_string(fields.size()));
    TraceRow row;
    try {
      row.iteration = std::stoi(fields[0]);
      row.wall_seconds = std::stod(fields[1]);
      row.cumulative_evaluations = std::stol(fields[2]);
      if (!fields[3].empty()) row.best_objective = std::stod(fields[3]);
      row.worker_id = std::stoi(fields[5]);
    } catch (const std::exception&) {
      throw TraceIoError(path + ": line " + std::to_string(line_no) +
                         ": malformed numeric field");
    }
    const auto event = trace_event_from_string(fields[4]);
    if (!event)
      throw TraceIoError(path + ": line " + std::to_string(line_no) +
                         ": unknown event '" + fields[4] + "'");
    row.event = *event;
    trace.rows.push_back(row);
  }
  return trace;
}

nlohmann::json result_to_json(const RunResult& result,
                              const nlohmann::json& config_echo) {
  nlohmann::json j;
  if (result.best) {
    j["best"] = {{"x", result.best->x},
                 {"y", result.best->y},
                 {"objective", result.best->objective}};
  } else {
    j["best"] = nullptr;
  }
  j["termination"] = to_string(result.termination);
  j["evaluations"] = result.evaluations;
  j["samples"] = result.samples.size();
  j["config"] = config_echo;
  return j;
}

void write_result_json(const std::string& path, const RunResult& result,
                       const nlohmann::json& config_echo) {
  std::ofstream os(path);
  if (!os) throw TraceIoError("cannot open result file for writing: " + path);
  os << result_to_json(result, config_echo).dump(2) << '\n';
}

ComparisonSummary compare_traces(
    const std::vector<std::pair<std::string, RunTrace>>& traces, Sense sense) {
  if (traces.empty())
    throw std::invalid_argument("compare_traces: need at least one trace");
  ComparisonSummary summary;
  for (const auto& [label, trace] : traces) {
    if (trace.rows.empty())
      throw std::invalid_argument("compare_traces: trace '" + label +
                                  "' has no rows");
    TraceSummary entry;
    entry.label = label;
    const auto& last = trace.rows.back();
    entry.total_evaluations = last.cumulative_evaluations;
    entry.total_seconds = last.wall_seconds;
    if (last.best_objective) {
      entry.has_best = true;
      entry.best_objective = *last.best_objective;
      for (const auto& row : trace.rows) {
        if (row.best_objective && *row.best_objective == entry.best_objective) {
          entry.evaluations_to_best = row.cumulative_evaluations;
          entry.seconds_to_best = row.wall_seconds;
          break;
        }
      }
    }
    summary.entries.push_back(entry);
  }
  std::stable_sort(summary.entries.begin(), summary.entries.end(),
                   [sense](const TraceSummary& a, const TraceSummary& b) {
                     if (a.has_best != b.has_best) return a.has_best;
                     if (!a.has_best) return false;
                     return sense == Sense::kMaximize
                                ? a.best_objective > b.best_objective
                                : a.best_objective < b.best_objective;
                   });
  return summary;
}

std::string render_comparison_table(const ComparisonSummary& summary) {
  std::ostringstream os;
  os << std::left << std::setw(24) << "trace" << std::right << std::setw(16)
     << "best" << std::setw(14) << "evals_to_best" << std::setw(16)
     << "secs_to_best" << std::setw(12) << "evals" << '\n';
  for (const auto& e : summary.entries) {
    os << std::left << std::setw(24) << e.label << std::right;
    if (e.has_best)
      os << std::setw(16) << std::setprecision(6) << std::fixed
         << e.best_objective << std::setw(14) << e.evaluations_to_best
         << std::setw(16) << std::setprecision(3) << e.seconds_to_best;
    else
      os << std::setw(16) << "none" << std::setw(14) << "-" << std::setw(16)
         << "-";
    os << std::setw(12) << e.total_evaluations << '\n';
    os.unsetf(std::ios::fixed);
  }
  return os.str();
}

void write_comparison_csv(const std::string& path,
                          const ComparisonSummary& summary) {
  std::ofstream os(path);
  if (!os)
    throw TraceIoError("cannot open comparison file for writing: " + path);
  os << "trace,best_objective,evaluations_to_best,seconds_to_best,"
        "total_evaluations,total_seconds\n";
  for (const auto& e : summary.entries) {
    os << e.label << ',';
    if (e.has_best)
      os << format_double(e.best_objective) << ',' << e.evaluations_to_best
         << ',' << format_double(e.seconds_to_best);
    else
      os << ",,";
    os << ',' << e.total_evaluations << ',' << format_double(e.total_seconds)
       << '\n';
  }
}

void write_series_csv(const std::string& path, const RunTrace& trace,
                      int max_points) {
  std::ofstream os(path);
  if (!os) throw TraceIoError("cannot open series file for writing: " + path);
  os << "cumulative_evaluations,wall_seconds,best_objective\n";
  const auto n = static_cast<long>(trace.rows.size());
  if (n == 0) return;
  const long stride = std::max<long>(1, (n + max_points - 1) / max_points);
  for (long i = 0; i < n; i += stride) {
    const auto& row = trace.rows[static_cast<std::size_t>(i)];
    os << row.cumulative_evaluations << ',' << format_double(row.wall_seconds)
       << ',';
    if (row.best_objective) os << format_double(*row.best_objective);
    os << '\n';
  }
  if ((n - 1) % stride != 0) {
    const auto& row = trace.rows.back();
    os << row.cumulative_evaluations << ',' << format_double(row.wall_seconds)
       << ',';
    if (row.best_objective) os << format_double(*row.best_objective);
    os << '\n';
  }
}

}  // namespace cnma
