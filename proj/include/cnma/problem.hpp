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

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cnma {

enum class VarKind { kContinuous, kInteger, kBinary };
enum class Sense { kMaximize, kMinimize };

struct VariableSpec {
  std::string name;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = 0.0;
};

/// Linear expression: constant + sum of coefficient * variable.
struct LinearExpr {
  struct Term {
    double coeff;
    std::string var;
  };
  std::vector<Term> terms;
  double constant = 0.0;

  LinearExpr() = default;
  explicit LinearExpr(double c) : constant(c) {}

  static LinearExpr variable(const std::string& name, double coeff = 1.0) {
    LinearExpr e;
    e.terms.push_back({coeff, name});
    return e;
  }

  LinearExpr& add(double coeff, const std::string& var) {
    terms.push_back({coeff, var});
    return *this;
  }

  LinearExpr operator+(const LinearExpr& other) const;
  LinearExpr operator-(const LinearExpr& other) const;
  LinearExpr operator*(double s) const;
};

enum class ConstraintOp {
  kLe,     // lhs <= rhs
  kGe,     // lhs >= rhs
  kEq,     // lhs == rhs
  kAbsLe,  // |lhs| <= rhs
};

struct Constraint {
  LinearExpr lhs;
  ConstraintOp op = ConstraintOp::kLe;
  LinearExpr rhs;
  std::string label;

  // The absolute-value form expands to a pair of plain inequalities
  // (lhs <= rhs and -lhs <= rhs); every other form maps to itself.
  std::vector<Constraint> rewritten() const;
};

enum class EvalStatus { kOk, kFailed };

struct EvalResult {
  EvalStatus status = EvalStatus::kFailed;
  std::vector<double> y;       // valid only when status == kOk
  double duration = 0.0;       // seconds

  bool ok() const { return status == EvalStatus::kOk; }
  static EvalResult success(std::vector<double> y, double duration = 0.0) {
    return {EvalStatus::kOk, std::move(y), duration};
  }
  static EvalResult failure(double duration = 0.0) {
    return {EvalStatus::kFailed, {}, duration};
  }
};

struct Sample {
  std::vector<double> x;
  EvalResult result;
};

// Blackbox convention: returns the output vector; a failure is signalled by
// throwing or by any non-finite output component.
using Blackbox = std::function<std::vector<double>(const std::vector<double>&)>;

struct Problem {
  std::vector<VariableSpec> x_vars;
  std::vector<VariableSpec> y_vars;
  LinearExpr objective;
  Sense sense = Sense::kMaximize;
  std::vector<Constraint> constraints;
  Blackbox blackbox;
  double feasibility_tolerance = 1e-6;

  const VariableSpec* find_variable(const std::string& name) const;
};

class MissingVariableError : public std::runtime_error {
 public:
  explicit MissingVariableError(const std::string& var)
      : std::runtime_error("unresolved variable: " + var), variable(var) {}
  std::string variable;
};

using Assignment = std::map<std::string, double>;

/// Evaluates constant + sum coeff*value. Throws MissingVariableError when a
/// referenced variable is absent from the assignment.
double eval_linear(const LinearExpr& expr, const Assignment& assignment);

struct ConstraintViolation {
  std::size_t constraint_index;
  std::string description;
  double slack;  // signed; negative means violated by |slack|
};

struct CheckReport {
  bool satisfied = true;
  std::vector<ConstraintViolation> violations;
};

/// Checks every constraint of the problem at the given point, within
/// problem.feasibility_tolerance. Absolute-value constraints are rewritten
/// before checking.
CheckReport check_constraints(const Problem& problem,
                              const Assignment& assignment);

/// Returns the list of structural defects (empty means well-formed). Never
/// throws for malformed input.
std::vector<std::string> validate_problem(const Problem& problem);

Assignment make_assignment(const Problem& problem,
                           const std::vector<double>& x,
                           const std::vector<double>& y);

}  // namespace cnma
