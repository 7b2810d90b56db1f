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

#include <mutex>
#include <vector>

#include "cnma/engine.hpp"

namespace cnma {

struct ParallelConfig {
  EngineConfig base;
  int workers = 5;
  // Cycled across workers: worker j gets architectures[j % size].
  std::vector<Architecture> architectures = {
      {{35, 10}}, {{10}}, {{30}}, {{35}}, {{50}}};
  std::uint64_t base_seed = 0;
};

/// Append-only sample pool shared by the parallel workers. Appends are
/// serialized; snapshots are stable copies unaffected by later appends.
class SharedPool {
 public:
  SharedPool() = default;
  explicit SharedPool(std::vector<Sample> initial)
      : samples_(std::move(initial)) {}

  void append(Sample sample) {
    std::lock_guard<std::mutex> lock(mutex_);
    samples_.push_back(std::move(sample));
  }

  std::vector<Sample> snapshot() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return samples_;
  }

  std::size_t size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return samples_.size();
  }

 private:
  mutable std::mutex mutex_;
  std::vector<Sample> samples_;
};

/// Bulk-synchronous parallel loop: per iteration every worker trains its own
/// network on the same pool snapshot, solves its MILP, and contributes one
/// evaluated sample (candidate, or a random draw when its MILP was
/// infeasible or its evaluation failed); a barrier then merges contributions
/// in worker order, which keeps runs deterministic for a fixed base seed.
RunResult parallel_cnma(const Problem& problem, const ParallelConfig& config);

}  // namespace cnma
