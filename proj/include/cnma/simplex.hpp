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

namespace cnma {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> assignment;  // one value per Milp var
  double objective = 0.0;          // in the problem's sense
  bool numerical_trouble = false;
};

struct LpParams {
  double primal_tol = 1e-7;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  int max_iterations = 20000;
};

/// Solves the LP relaxation of the MILP (integrality dropped) by bounded
/// primal simplex. `lower`/`upper`, when non-empty, override the variable
/// bounds; branch-and-bound uses this to tighten bounds per node.
LpSolution solve_lp(const Milp& milp,
                    const std::vector<double>& lower = {},
                    const std::vector<double>& upper = {},
                    const LpParams& params = {});

}  // namespace cnma
