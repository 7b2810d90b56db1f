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

#include "cnma/sampling.hpp"

#include <stdexcept>

namespace cnma {

SampleGenerator::SampleGenerator(std::vector<VariableSpec> domains,
                                 std::uint64_t seed)
    : domains_(std::move(domains)), rng_(seed) {
  if (domains_.empty())
    throw std::invalid_argument("SampleGenerator needs at least one domain");
}

std::vector<double> SampleGenerator::draw() {
  std::vector<double> x;
  x.reserve(domains_.size());
  for (const auto& d : domains_) {
    if (d.kind == VarKind::kContinuous) {
      std::uniform_real_distribution<double> dist(d.lower, d.upper);
      x.push_back(d.lower == d.upper ? d.lower : dist(rng_));
    } else {
      std::uniform_int_distribution<long long> dist(
          static_cast<long long>(d.lower), static_cast<long long>(d.upper));
      x.push_back(static_cast<double>(dist(rng_)));
    }
  }
  return x;
}

}  // namespace cnma
