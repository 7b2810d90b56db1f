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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "cnma/artifacts.hpp"

using namespace cnma;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("cnma_artifacts_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
  static inline int counter = 0;
};

RunTrace sample_trace() {
  RunTrace t;
  t.rows.push_back({0, 0.01, 1, std::nullopt, TraceEvent::kInitialSample, -1});
  t.rows.push_back({0, 0.02, 2, 1.5, TraceEvent::kInitialSample, -1});
  t.rows.push_back({1, 0.50, 3, 1.5, TraceEvent::kEvalFailed, -1});
  t.rows.push_back({2, 0.75, 4, 2.25, TraceEvent::kMilpSolved, 3});
  t.rows.push_back(
      {3, 1.00, 5, 2.25, TraceEvent::kMilpInfeasibleRandomFallback, -1});
  t.rows.push_back({4, 1.25, 6, 0.1234567890123456789, TraceEvent::kAccepted,
                    0});
  return t;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("trace csv round trip is lossless") {
  TempDir dir;
  RunTrace t = sample_trace();
  std::string path = dir.file("trace.csv");
  write_trace_csv(path, t);

  std::string text = slurp(path);
  CHECK(text.rfind("iteration,wall_seconds,cumulative_evaluations,"
                   "best_objective,event,worker_id\n", 0) == 0);

  RunTrace back = read_trace_csv(path);
  REQUIRE(back.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(back.rows[i].iteration == t.rows[i].iteration);
    CHECK(back.rows[i].wall_seconds == t.rows[i].wall_seconds);
    CHECK(back.rows[i].cumulative_evaluations ==
          t.rows[i].cumulative_evaluations);
    CHECK(back.rows[i].best_objective == t.rows[i].best_objective);
    CHECK(back.rows[i].event == t.rows[i].event);
    CHECK(back.rows[i].worker_id == t.rows[i].worker_id);
  }
}

TEST_CASE("missing incumbent serializes as an empty field") {
  TempDir dir;
  RunTrace t;
  t.rows.push_back({0, 0.0, 1, std::nullopt, TraceEvent::kInitialSample, -1});
  std::string path = dir.file("trace.csv");
  write_trace_csv(path, t);
  std::string text = slurp(path);
  CHECK(text.find(",,") != std::string::npos);
  RunTrace back = read_trace_csv(path);
  CHECK_FALSE(back.rows[0].best_objective.has_value());
}

TEST_CASE("trace reader reports the offending line") {
  TempDir dir;
  std::string path = dir.file("bad.csv");
  {
    std::ofstream out(path);
    out << "iteration,wall_seconds,cumulative_evaluations,best_objective,"
           "event,worker_id\n";
    out << "0,0.1,1,,initial_sample,-1\n";
    out << "1,not_a_number,2,,accepted,-1\n";
  }
  try {
    read_trace_csv(path);
    FAIL("expected TraceIoError");
  } catch (const TraceIoError& err) {
    CHECK(std::string(err.what()).find("3") != std::string::npos);
  }
}

TEST_CASE("reading a missing file throws") {
  CHECK_THROWS_AS(read_trace_csv("/nonexistent/trace.csv"), TraceIoError);
}

TEST_CASE("unknown event names are rejected") {
  TempDir dir;
  std::string path = dir.file("bad_event.csv");
  {
    std::ofstream out(path);
    out << "iteration,wall_seconds,cumulative_evaluations,best_objective,"
           "event,worker_id\n";
    out << "0,0.1,1,,flying_pig,-1\n";
  }
  CHECK_THROWS_AS(read_trace_csv(path), TraceIoError);
}

TEST_CASE("event names round trip through their string forms") {
  for (TraceEvent e : {TraceEvent::kInitialSample, TraceEvent::kMilpSolved,
                       TraceEvent::kMilpInfeasibleRandomFallback,
                       TraceEvent::kEvalFailed, TraceEvent::kAccepted}) {
    auto back = trace_event_from_string(to_string(e));
    REQUIRE(back.has_value());
    CHECK(*back == e);
  }
  CHECK_FALSE(trace_event_from_string("bogus").has_value());
}

TEST_CASE("result json carries best, termination and echo") {
  RunResult res;
  res.best = BestSolution{{0.25, 0.75}, {1.5}, 1.5};
  res.termination = Termination::kThresholdMet;
  res.evaluations = 42;
  res.trace = sample_trace();
  res.samples.push_back({{0.1, 0.2}, EvalResult::success({0.3})});
  res.samples.push_back({{0.4, 0.5}, EvalResult::failure()});

  nlohmann::json echo{{"benchmark", "demo"}, {"seed", 7}};
  nlohmann::json j = result_to_json(res, echo);
  CHECK(j["best"]["objective"].get<double>() == doctest::Approx(1.5));
  CHECK(j["best"]["x"].size() == 2);
  CHECK(j["evaluations"].get<long>() == 42);
  CHECK(j["termination"].get<std::string>() ==
        to_string(Termination::kThresholdMet));
  CHECK(j["config"]["benchmark"] == "demo");
}

TEST_CASE("result json uses null when no incumbent exists") {
  RunResult res;
  res.termination = Termination::kIterationsExhausted;
  nlohmann::json j = result_to_json(res, nlohmann::json::object());
  CHECK(j["best"].is_null());
}

TEST_CASE("result json file is valid json on disk") {
  TempDir dir;
  RunResult res;
  res.best = BestSolution{{1.0}, {2.0}, 2.0};
  res.evaluations = 3;
  std::string path = dir.file("result.json");
  write_result_json(path, res, nlohmann::json{{"k", "v"}});
  nlohmann::json j = nlohmann::json::parse(slurp(path));
  CHECK(j["best"]["objective"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("comparison ranks traces best-first") {
  RunTrace a, b, c;
  a.rows.push_back({0, 0.1, 1, 5.0, TraceEvent::kAccepted, -1});
  b.rows.push_back({0, 0.1, 1, 9.0, TraceEvent::kAccepted, -1});
  c.rows.push_back({0, 0.1, 1, 7.0, TraceEvent::kAccepted, -1});

  auto summary = compare_traces({{"a", a}, {"b", b}, {"c", c}},
                                Sense::kMaximize);
  REQUIRE(summary.entries.size() == 3);
  CHECK(summary.entries[0].label == "b");
  CHECK(summary.entries[1].label == "c");
  CHECK(summary.entries[2].label == "a");

  auto flipped = compare_traces({{"a", a}, {"b", b}, {"c", c}},
                                Sense::kMinimize);
  CHECK(flipped.entries[0].label == "a");
}

TEST_CASE("comparison records the first row attaining the final best") {
  RunTrace t;
  t.rows.push_back({0, 0.1, 1, 1.0, TraceEvent::kInitialSample, -1});
  t.rows.push_back({1, 0.2, 5, 3.0, TraceEvent::kAccepted, -1});
  t.rows.push_back({2, 0.9, 9, 3.0, TraceEvent::kMilpSolved, -1});

  auto summary = compare_traces({{"t", t}}, Sense::kMaximize);
  REQUIRE(summary.entries.size() == 1);
  const auto& e = summary.entries[0];
  CHECK(e.best_objective == doctest::Approx(3.0));
  CHECK(e.evaluations_to_best == 5);
  CHECK(e.seconds_to_best == doctest::Approx(0.2));
  CHECK(e.total_evaluations == 9);
  CHECK(e.total_seconds == doctest::Approx(0.9));
}

TEST_CASE("traces without incumbents rank last") {
  RunTrace with, without;
  with.rows.push_back({0, 0.1, 1, 2.0, TraceEvent::kAccepted, -1});
  without.rows.push_back({0, 0.1, 1, std::nullopt,
                          TraceEvent::kInitialSample, -1});
  auto summary =
      compare_traces({{"empty", without}, {"full", with}}, Sense::kMaximize);
  CHECK(summary.entries[0].label == "full");
  CHECK_FALSE(summary.entries[1].has_best);
}

TEST_CASE("comparison csv and table include every label") {
  TempDir dir;
  RunTrace a, b;
  a.rows.push_back({0, 0.1, 1, 5.0, TraceEvent::kAccepted, -1});
  b.rows.push_back({0, 0.2, 2, 6.0, TraceEvent::kAccepted, -1});
  auto summary = compare_traces({{"first", a}, {"second", b}},
                                Sense::kMaximize);
  std::string table = render_comparison_table(summary);
  CHECK(table.find("first") != std::string::npos);
  CHECK(table.find("second") != std::string::npos);

  std::string path = dir.file("comparison.csv");
  write_comparison_csv(path, summary);
  std::string text = slurp(path);
  CHECK(text.find("first") != std::string::npos);
  CHECK(text.find("second") != std::string::npos);
  // Header plus one line per trace.
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("series csv thins long traces but keeps the ends") {
  TempDir dir;
  RunTrace t;
  for (int i = 0; i < 5000; ++i) {
    t.rows.push_back({i, i * 0.001, i + 1, static_cast<double>(i),
                      TraceEvent::kMilpSolved, -1});
  }
  std::string path = dir.file("series.csv");
  write_series_csv(path, t, 100);
  std::string text = slurp(path);
  long lines = std::count(text.begin(), text.end(), '\n');
  CHECK(lines <= 102);  // header + at most max_points + last
  CHECK(text.find("\n1,0") != std::string::npos);        // first row
  CHECK(text.find("5000,") != std::string::npos);        // last row
}

TEST_CASE("high-precision objectives survive the csv round trip") {
  TempDir dir;
  RunTrace t;
  double v = 0.1 + 0.2;  // not exactly representable as 0.3
  t.rows.push_back({0, 1.0 / 3.0, 1, v, TraceEvent::kAccepted, -1});
  std::string path = dir.file("precise.csv");
  write_trace_csv(path, t);
  RunTrace back = read_trace_csv(path);
  CHECK(back.rows[0].best_objective.value() == v);
  CHECK(back.rows[0].wall_seconds == 1.0 / 3.0);
}
