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

#include <vector>

#include "cnma/milp.hpp"
#include "cnma/simplex.hpp"

namespace cnma {

enum class MilpStatus { kOptimal, kFeasible, kInfeasible, kTimeout };

struct MilpSolution {
  MilpStatus status = MilpStatus::kInfeasible;
  std::vector<double> assignment;
  double objective = 0.0;
  double bound = 0.0;  // best relaxation bound at termination
  long nodes_explored = 0;
  bool has_incumbent() const {
    return status == MilpStatus::kOptimal || status == MilpStatus::kFeasible;
  }
};

struct MilpParams {
  double time_limit = 30.0;  // seconds
  double gap_tol = 1e-6;
  double integrality_tol = 1e-6;
  LpParams lp;
};

/// Best-bound branch-and-bound with depth-first plunging. Branches on the
/// integer variable whose fractional part is nearest 0.5; the child on the
/// incumbent's side (nearest integer when there is none) is dived first.
/// Deterministic for identical inputs and limits.
MilpSolution solve_milp(const Milp& milp, const MilpParams& params = {});

}  // namespace cnma
