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

#include <map>
#include <string>
#include <vector>

#include "cnma/problem.hpp"

namespace cnma {

struct MilpVar {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = 0.0;
};

enum class RowRel { kLe, kGe, kEq };

/// One linear row: sum of coeff * var {<=,>=,=} rhs. Terms reference
/// variable indices into Milp::vars.
struct MilpRow {
  struct Term {
    int var;
    double coeff;
  };
  std::vector<Term> terms;
  RowRel rel = RowRel::kLe;
  double rhs = 0.0;
  std::string name;
};

struct Milp {
  std::vector<MilpVar> vars;
  std::vector<MilpRow> rows;
  std::vector<MilpRow::Term> objective;
  double objective_constant = 0.0;
  Sense sense = Sense::kMaximize;
  // Problem x/y variable name -> MILP variable index.
  std::map<std::string, int> handles;

  int add_var(const std::string& name, VarKind kind, double lower, double upper) {
    vars.push_back({name, kind, lower, upper});
    return static_cast<int>(vars.size()) - 1;
  }

  MilpRow& add_row(RowRel rel, double rhs, const std::string& name = "") {
    rows.push_back({{}, rel, rhs, name});
    return rows.back();
  }

  int find_var(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i].name == name) return static_cast<int>(i);
    return -1;
  }

  std::size_t integer_count() const {
    std::size_t n = 0;
    for (const auto& v : vars)
      if (v.kind != VarKind::kContinuous) ++n;
    return n;
  }

  double objective_value(const std::vector<double>& assignment) const {
    double v = objective_constant;
    for (const auto& t : objective) v += t.coeff * assignment[t.var];
    return v;
  }
};

}  // namespace cnma
