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

#include "cnma/problem.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace cnma {

LinearExpr LinearExpr::operator+(const LinearExpr& other) const {
  LinearExpr out = *this;
  out.constant += other.constant;
  out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
  return out;
}

LinearExpr LinearExpr::operator-(const LinearExpr& other) const {
  return *this + other * -1.0;
}

LinearExpr LinearExpr::operator*(double s) const {
  LinearExpr out = *this;
  out.constant *= s;
  for (auto& t : out.terms) t.coeff *= s;
  return out;
}

std::vector<Constraint> Constraint::rewritten() const {
  if (op != ConstraintOp::kAbsLe) return {*this};
  Constraint pos{lhs, ConstraintOp::kLe, rhs, label + "_abs_pos"};
  Constraint neg{lhs * -1.0, ConstraintOp::kLe, rhs, label + "_abs_neg"};
  return {pos, neg};
}

const VariableSpec* Problem::find_variable(const std::string& name) const {
  for (const auto& v : x_vars)
    if (v.name == name) return &v;
  for (const auto& v : y_vars)
    if (v.name == name) return &v;
  return nullptr;
}

double eval_linear(const LinearExpr& expr, const Assignment& assignment) {
  double value = expr.constant;
  for (const auto& t : expr.terms) {
    auto it = assignment.find(t.var);
    if (it == assignment.end()) throw MissingVariableError(t.var);
    value += t.coeff * it->second;
  }
  return value;
}

namespace {

std::string describe(const Constraint& c, std::size_t index) {
  if (!c.label.empty()) return c.label;
  std::ostringstream os;
  os << "constraint[" << index << "]";
  return os.str();
}

}  // namespace

CheckReport check_constraints(const Problem& problem,
                              const Assignment& assignment) {
  CheckReport report;
  const double tol = problem.feasibility_tolerance;
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    for (const Constraint& c : problem.constraints[i].rewritten()) {
      double lhs = eval_linear(c.lhs, assignment);
      double rhs = eval_linear(c.rhs, assignment);
      // slack >= 0 means satisfied (inequalities); equality uses |lhs-rhs|.
      double slack = 0.0;
      switch (c.op) {
        case ConstraintOp::kLe: slack = rhs - lhs; break;
        case ConstraintOp::kGe: slack = lhs - rhs; break;
        case ConstraintOp::kEq: slack = -std::abs(lhs - rhs); break;
        case ConstraintOp::kAbsLe: slack = 0.0; break;  // unreachable
      }
      if (slack < -tol) {
        report.satisfied = false;
        report.violations.push_back({i, describe(c, i), slack});
      }
    }
  }
  return report;
}

namespace {

void validate_vars(const std::vector<VariableSpec>& vars, const char* group,
                   std::vector<std::string>& defects) {
  for (const auto& v : vars) {
    if (v.lower > v.upper)
      defects.push_back("inverted bounds on " + std::string(group) + " variable " +
                        v.name);
    if (v.kind != VarKind::kContinuous) {
      if (std::floor(v.lower) != v.lower || std::floor(v.upper) != v.upper)
        defects.push_back("non-integral bounds on integer variable " + v.name);
    }
    if (v.kind == VarKind::kBinary && (v.lower != 0.0 || v.upper != 1.0))
      defects.push_back("binary variable " + v.name + " must have bounds {0,1}");
  }
}

void validate_expr(const LinearExpr& expr, const std::set<std::string>& known,
                   const std::string& where,
                   std::vector<std::string>& defects) {
  for (const auto& t : expr.terms) {
    if (!known.count(t.var))
      defects.push_back("unknown variable " + t.var + " in " + where);
  }
}

}  // namespace

std::vector<std::string> validate_problem(const Problem& problem) {
  std::vector<std::string> defects;
  std::set<std::string> known;
  for (const auto& v : problem.x_vars) {
    if (!known.insert(v.name).second)
      defects.push_back("duplicate variable name " + v.name);
  }
  for (const auto& v : problem.y_vars) {
    if (!known.insert(v.name).second)
      defects.push_back("duplicate variable name " + v.name);
  }
  validate_vars(problem.x_vars, "x", defects);
  validate_vars(problem.y_vars, "y", defects);
  validate_expr(problem.objective, known, "objective", defects);
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const auto& c = problem.constraints[i];
    validate_expr(c.lhs, known, describe(c, i), defects);
    validate_expr(c.rhs, known, describe(c, i), defects);
  }
  if (problem.x_vars.empty()) defects.push_back("problem has no x variables");
  if (!problem.blackbox) defects.push_back("problem has no blackbox");
  return defects;
}

Assignment make_assignment(const Problem& problem,
                           const std::vector<double>& x,
                           const std::vector<double>& y) {
  Assignment a;
  for (std::size_t i = 0; i < problem.x_vars.size() && i < x.size(); ++i)
    a[problem.x_vars[i].name] = x[i];
  for (std::size_t i = 0; i < problem.y_vars.size() && i < y.size(); ++i)
    a[problem.y_vars[i].name] = y[i];
  return a;
}

}  // namespace cnma
