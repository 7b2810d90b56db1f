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

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cnma/artifacts.hpp"
#include "cnma/benchmarks.hpp"
#include "cnma/config.hpp"
#include "cnma/parallel.hpp"

namespace {

namespace fs = std::filesystem;

int run_command(const std::string& config_path, long seed_override,
                bool has_seed, const std::string& output_dir_override,
                const std::string& engine_override) {
  cnma::RunConfig config;
  try {
    config = cnma::load_run_config(config_path);
  } catch (const cnma::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  if (has_seed) {
    config.engine_config.seed = static_cast<std::uint64_t>(seed_override);
    config.parallel_config.base.seed = config.engine_config.seed;
    config.parallel_config.base_seed = config.engine_config.seed;
    config.raw["engine"]["seed"] = seed_override;
  }
  if (!output_dir_override.empty()) {
    config.output_dir = output_dir_override;
    config.raw["output_dir"] = output_dir_override;
  }
  if (!engine_override.empty()) {
    if (engine_override == "cnma")
      config.engine = cnma::EngineKind::kCnma;
    else if (engine_override == "parallel_cnma")
      config.engine = cnma::EngineKind::kParallelCnma;
    else if (engine_override == "random_search")
      config.engine = cnma::EngineKind::kRandomSearch;
    else {
      std::cerr << "config error: unknown engine '" << engine_override
                << "'\n";
      return 1;
    }
    config.raw["engine"]["kind"] = engine_override;
  }

  const cnma::BenchmarkSpec* spec = cnma::find_benchmark(config.benchmark);
  if (!spec) {
    std::cerr << "config error: unknown benchmark '" << config.benchmark
              << "'\n";
    return 1;
  }
  if (!spec->available) {
    std::cerr << "config error: benchmark '" << config.benchmark
              << "' requires an external simulator\n";
    return 1;
  }

  cnma::Problem problem = spec->factory();
  for (const auto& c : config.extra_constraints)
    problem.constraints.push_back(c);

  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) {
    std::cerr << "cannot create output directory '" << config.output_dir
              << "': " << ec.message() << '\n';
    return 1;
  }

  std::cout << "benchmark: " << config.benchmark << '\n'
            << "engine:    " << cnma::to_string(config.engine) << '\n'
            << "seed:      " << config.engine_config.seed << '\n';

  cnma::RunResult result;
  switch (config.engine) {
    case cnma::EngineKind::kCnma:
      result = cnma::cnma_optimize(problem, config.engine_config);
      break;
    case cnma::EngineKind::kParallelCnma:
      result = cnma::parallel_cnma(problem, config.parallel_config);
      break;
    case cnma::EngineKind::kRandomSearch:
      result = cnma::random_search(problem, config.random_search_budget,
                                   config.engine_config.seed);
      break;
  }

  const fs::path out(config.output_dir);
  cnma::write_trace_csv((out / "trace.csv").string(), result.trace);
  cnma::write_result_json((out / "result.json").string(), result, config.raw);
  cnma::write_series_csv((out / "series.csv").string(), result.trace);

  std::cout << "evaluations: " << result.evaluations << '\n'
            << "termination: " << cnma::to_string(result.termination) << '\n';
  if (result.best) {
    std::cout << "best objective: " << result.best->objective << '\n';
  } else {
    std::cout << "best objective: none\n";
  }
  std::cout << "artifacts: " << (out / "trace.csv").string() << ", "
            << (out / "result.json").string() << ", "
            << (out / "series.csv").string() << '\n';
  return 0;
}

int compare_command(const std::vector<std::string>& trace_paths,
                    const std::string& sense_text,
                    const std::string& output_path) {
  const cnma::Sense sense =
      sense_text == "min" ? cnma::Sense::kMinimize : cnma::Sense::kMaximize;
  std::vector<std::pair<std::string, cnma::RunTrace>> traces;
  for (const auto& path : trace_paths) {
    try {
      traces.emplace_back(path, cnma::read_trace_csv(path));
    } catch (const cnma::TraceIoError& e) {
      std::cerr << "trace error: " << e.what() << '\n';
      return 1;
    }
  }
  const auto summary = cnma::compare_traces(traces, sense);
  std::cout << cnma::render_comparison_table(summary);
  cnma::write_comparison_csv(output_path, summary);
  for (std::size_t i = 0; i < trace_paths.size(); ++i) {
    const fs::path series =
        fs::path(trace_paths[i]).replace_extension(".series.csv");
    cnma::write_series_csv(series.string(), traces[i].second);
  }
  std::cout << "wrote " << output_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained blackbox optimization via neural surrogates"};
  app.require_subcommand(1);

  std::string config_path;
  long seed_override = 0;
  std::string output_dir_override;
  std::string engine_override;
  auto* run = app.add_subcommand("run", "execute a run configuration");
  run->add_option("config", config_path, "path to a run config (JSON)")
      ->required();
  auto* seed_opt =
      run->add_option("--seed", seed_override, "override the run seed");
  run->add_option("--output-dir", output_dir_override,
                  "override the output directory");
  run->add_option("--engine", engine_override,
                  "override the engine (cnma, parallel_cnma, random_search)");

  std::vector<std::string> trace_paths;
  std::string sense_text = "max";
  std::string comparison_path = "comparison.csv";
  auto* compare = app.add_subcommand("compare", "compare run traces");
  compare->add_option("traces", trace_paths, "trace.csv files to compare")
      ->required()
      ->expected(-1);
  compare->add_option("--sense", sense_text, "max or min (default max)")
      ->check(CLI::IsMember({"max", "min"}));
  compare->add_option("--output", comparison_path,
                      "comparison CSV path (default comparison.csv)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return run_command(config_path, seed_override, !seed_opt->empty(),
                         output_dir_override, engine_override);
    return compare_command(trace_paths, sense_text, comparison_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
