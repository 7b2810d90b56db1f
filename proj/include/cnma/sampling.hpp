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

#include <cstdint>
#include <random>
#include <vector>

#include "cnma/problem.hpp"

namespace cnma {

/// Seeded uniform sampler over a mixed box domain. Continuous coordinates
/// draw uniform on [lower, upper]; integer and binary coordinates draw
/// uniform over {lower, ..., upper}. Equal seeds yield equal streams.
class SampleGenerator {
 public:
  SampleGenerator(std::vector<VariableSpec> domains, std::uint64_t seed);

  std::vector<double> draw();

  const std::vector<VariableSpec>& domains() const { return domains_; }

 private:
  std::vector<VariableSpec> domains_;
  std::mt19937_64 rng_;
};

}  // namespace cnma
