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

#include "cnma/simplex.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace cnma {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ColStatus { kBasic, kAtLower, kAtUpper };

// Bounded-variable primal simplex on the full dense tableau. Columns are
// structural vars, then one slack per inequality row, then one artificial
// per row. Phase 1 minimizes the artificial sum from a signed-identity
// artificial basis; phase 2 minimizes the real cost with artificials fixed
// at zero.
class Tableau {
 public:
  Tableau(const Milp& milp, const std::vector<double>& lo_override,
          const std::vector<double>& up_override, const LpParams& params)
      : milp_(milp), params_(params) {
    const int n_struct = static_cast<int>(milp.vars.size());
    const int m = static_cast<int>(milp.rows.size());
    n_slack_ = 0;
    for (const auto& r : milp.rows)
      if (r.rel != RowRel::kEq) ++n_slack_;
    n_ = n_struct + n_slack_ + m;
    m_ = m;
    art_begin_ = n_struct + n_slack_;

    lo_.assign(n_, 0.0);
    up_.assign(n_, kInf);
    for (int j = 0; j < n_struct; ++j) {
      lo_[j] = lo_override.empty() ? milp.vars[j].lower : lo_override[j];
      up_[j] = up_override.empty() ? milp.vars[j].upper : up_override[j];
    }

    A_ = Eigen::MatrixXd::Zero(m_, n_);
    b_ = Eigen::VectorXd::Zero(m_);
    int slack = n_struct;
    for (int i = 0; i < m_; ++i) {
      const auto& row = milp.rows[i];
      for (const auto& t : row.terms) A_(i, t.var) += t.coeff;
      b_(i) = row.rhs;
      if (row.rel == RowRel::kLe) A_(i, slack++) = 1.0;
      else if (row.rel == RowRel::kGe) A_(i, slack++) = -1.0;
    }

    status_.assign(n_, ColStatus::kAtLower);
    // Residuals with all structural vars at their lower bound and slacks at
    // 0. A row whose slack can absorb its residual starts with the slack
    // basic; only the rest need a basic artificial in phase 1.
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n_);
    for (int j = 0; j < n_struct; ++j) x0(j) = lo_[j];
    Eigen::VectorXd r = b_ - A_ * x0;
    std::vector<int> slack_col(m_, -1);
    slack = n_struct;
    for (int i = 0; i < m_; ++i)
      if (milp.rows[i].rel != RowRel::kEq) slack_col[i] = slack++;
    basis_.resize(m_);
    xb_ = Eigen::VectorXd::Zero(m_);
    std::vector<double> basis_sign(m_, 1.0);
    for (int i = 0; i < m_; ++i) {
      const int a = art_begin_ + i;
      A_(i, a) = (r(i) >= 0.0) ? 1.0 : -1.0;
      const bool slack_feasible =
          slack_col[i] >= 0 &&
          ((milp.rows[i].rel == RowRel::kLe && r(i) >= 0.0) ||
           (milp.rows[i].rel == RowRel::kGe && r(i) <= 0.0));
      if (slack_feasible) {
        basis_[i] = slack_col[i];
        basis_sign[i] = (milp.rows[i].rel == RowRel::kLe) ? 1.0 : -1.0;
      } else {
        basis_[i] = a;
        basis_sign[i] = A_(i, a);
      }
      status_[basis_[i]] = ColStatus::kBasic;
      xb_(i) = std::abs(r(i));
    }
    // T = B^{-1} A with B the signed diagonal of the starting basis.
    T_ = A_;
    for (int i = 0; i < m_; ++i)
      if (basis_sign[i] < 0.0) T_.row(i) = -A_.row(i);

    // A nonbasic artificial is never allowed to enter, so pivots can skip
    // the artificial block of the tableau entirely.
    for (int j = art_begin_; j < n_; ++j)
      if (status_[j] != ColStatus::kBasic) up_[j] = 0.0;
  }

  bool infeasible_lower(int j) const { return lo_[j] > up_[j]; }

  bool bounds_consistent() const {
    for (int j = 0; j < n_; ++j)
      if (lo_[j] > up_[j] + 1e-12) return false;
    return true;
  }

  // Runs simplex with cost vector c. Returns false on iteration-cap abort.
  bool minimize(const Eigen::VectorXd& c, bool* unbounded) {
    *unbounded = false;
    int degenerate_streak = 0;
    Eigen::VectorXd d;
    for (int iter = 0; iter < params_.max_iterations; ++iter) {
      // Reduced costs, updated incrementally after each pivot and recomputed
      // periodically to limit drift.
      if (iter % 64 == 0) {
        Eigen::VectorXd cB(m_);
        for (int i = 0; i < m_; ++i) cB(i) = c(basis_[i]);
        d = c - T_.transpose() * cB;
      }

      const bool bland = degenerate_streak > 30;
      int enter = -1;
      double best = 0.0;
      for (int j = 0; j < n_; ++j) {
        if (status_[j] == ColStatus::kBasic) continue;
        if (lo_[j] == up_[j]) continue;  // fixed, never profitable
        double score = 0.0;
        if (status_[j] == ColStatus::kAtLower && d(j) < -params_.dual_tol)
          score = -d(j);
        else if (status_[j] == ColStatus::kAtUpper && d(j) > params_.dual_tol)
          score = d(j);
        else
          continue;
        if (bland) { enter = j; break; }
        if (score > best) { best = score; enter = j; }
      }
      if (enter < 0) return true;  // optimal for this cost

      const double dir = (status_[enter] == ColStatus::kAtLower) ? 1.0 : -1.0;
      const Eigen::VectorXd w = T_.col(enter);

      double t_max = up_[enter] - lo_[enter];  // bound-flip limit
      int leave = -1;
      bool leave_at_upper = false;
      for (int i = 0; i < m_; ++i) {
        const double a = dir * w(i);
        const int bj = basis_[i];
        double limit;
        bool at_upper;
        if (a > params_.pivot_tol) {
          limit = (xb_(i) - lo_[bj]) / a;
          at_upper = false;
        } else if (a < -params_.pivot_tol) {
          limit = (up_[bj] == kInf) ? kInf : (up_[bj] - xb_(i)) / (-a);
          at_upper = true;
        } else {
          continue;
        }
        if (limit < -1e-10) limit = 0.0;
        if (limit < t_max - 1e-12 ||
            (leave >= 0 && limit < t_max + 1e-12 && basis_[i] < basis_[leave])) {
          t_max = std::min(t_max, std::max(limit, 0.0));
          leave = i;
          leave_at_upper = at_upper;
        }
      }

      if (leave < 0) {
        if (t_max == kInf) { *unbounded = true; return true; }
        // Bound flip.
        xb_ -= dir * t_max * w;
        status_[enter] = (status_[enter] == ColStatus::kAtLower)
                             ? ColStatus::kAtUpper
                             : ColStatus::kAtLower;
        degenerate_streak = (t_max < 1e-11) ? degenerate_streak + 1 : 0;
        continue;
      }

      degenerate_streak = (t_max < 1e-11) ? degenerate_streak + 1 : 0;

      const double enter_from =
          (status_[enter] == ColStatus::kAtLower) ? lo_[enter] : up_[enter];
      xb_ -= dir * t_max * w;
      const int leaving_var = basis_[leave];
      status_[leaving_var] =
          leave_at_upper ? ColStatus::kAtUpper : ColStatus::kAtLower;
      if (leaving_var >= art_begin_) {
        lo_[leaving_var] = 0.0;
        up_[leaving_var] = 0.0;
      }
      basis_[leave] = enter;
      status_[enter] = ColStatus::kBasic;
      xb_(leave) = enter_from + dir * t_max;

      // Pivot T on (leave, enter); the artificial block is write-only from
      // here on and can be skipped.
      const double piv = T_(leave, enter);
      T_.row(leave).head(art_begin_) /= piv;
      Eigen::VectorXd col = T_.col(enter);
      col(leave) = 0.0;
      T_.leftCols(art_begin_).noalias() -=
          col * T_.row(leave).head(art_begin_);
      const double d_enter = d(enter);
      d.head(art_begin_).noalias() -=
          d_enter * T_.row(leave).head(art_begin_).transpose();
      d(enter) = 0.0;
    }
    return false;
  }

  // Re-derives basic values from the original data; removes pivot drift.
  void refresh_basics() {
    Eigen::MatrixXd B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = A_.col(basis_[i]);
    Eigen::VectorXd rhs = b_;
    for (int j = 0; j < n_; ++j) {
      if (status_[j] == ColStatus::kBasic) continue;
      const double v = (status_[j] == ColStatus::kAtLower) ? lo_[j] : up_[j];
      if (v != 0.0) rhs -= v * A_.col(j);
    }
    xb_ = B.partialPivLu().solve(rhs);
  }

  double artificial_sum() const {
    double s = 0.0;
    for (int i = 0; i < m_; ++i)
      if (basis_[i] >= art_begin_) s += std::abs(xb_(i));
    return s;
  }

  void fix_artificials() {
    for (int j = art_begin_; j < n_; ++j) up_[j] = 0.0;
  }

  Eigen::VectorXd phase1_cost() const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n_);
    for (int j = art_begin_; j < n_; ++j) c(j) = 1.0;
    return c;
  }

  Eigen::VectorXd phase2_cost() const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(n_);
    const double sign = (milp_.sense == Sense::kMaximize) ? -1.0 : 1.0;
    for (const auto& t : milp_.objective) c(t.var) += sign * t.coeff;
    return c;
  }

  std::vector<double> structural_values() const {
    std::vector<double> x(milp_.vars.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      const int jj = static_cast<int>(j);
      x[j] = (status_[jj] == ColStatus::kAtLower) ? lo_[jj] : up_[jj];
    }
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < static_cast<int>(milp_.vars.size()))
        x[basis_[i]] = xb_(i);
    // Clamp tiny bound violations from floating-point pivots.
    for (std::size_t j = 0; j < x.size(); ++j) {
      const int jj = static_cast<int>(j);
      if (x[j] < lo_[jj]) x[j] = lo_[jj];
      if (x[j] > up_[jj]) x[j] = up_[jj];
    }
    return x;
  }

 private:
  const Milp& milp_;
  LpParams params_;
  int n_ = 0, m_ = 0, n_slack_ = 0, art_begin_ = 0;
  Eigen::MatrixXd A_, T_;
  Eigen::VectorXd b_, xb_;
  std::vector<double> lo_, up_;
  std::vector<int> basis_;
  std::vector<ColStatus> status_;
};

LpSolution solve_once(const Milp& milp, const std::vector<double>& lo,
                      const std::vector<double>& up, const LpParams& params,
                      bool* aborted) {
  LpSolution sol;
  *aborted = false;

  Tableau tab(milp, lo, up, params);
  if (!tab.bounds_consistent()) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }

  bool unbounded = false;
  if (!tab.minimize(tab.phase1_cost(), &unbounded)) {
    *aborted = true;
    return sol;
  }
  tab.refresh_basics();
  if (tab.artificial_sum() > params.primal_tol * 10.0) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }
  tab.fix_artificials();
  if (!tab.minimize(tab.phase2_cost(), &unbounded)) {
    *aborted = true;
    return sol;
  }
  if (unbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }
  tab.refresh_basics();

  sol.status = LpStatus::kOptimal;
  sol.assignment = tab.structural_values();
  sol.objective = milp.objective_value(sol.assignment);
  return sol;
}

}  // namespace

LpSolution solve_lp(const Milp& milp, const std::vector<double>& lower,
                    const std::vector<double>& upper, const LpParams& params) {
  bool aborted = false;
  LpSolution sol = solve_once(milp, lower, upper, params, &aborted);
  if (!aborted) return sol;

  // One re-solve with perturbed bounds, then give up with a diagnostic.
  std::vector<double> lo(milp.vars.size()), up(milp.vars.size());
  for (std::size_t j = 0; j < milp.vars.size(); ++j) {
    lo[j] = (lower.empty() ? milp.vars[j].lower : lower[j]) -
            1e-9 * static_cast<double>(j + 1);
    up[j] = (upper.empty() ? milp.vars[j].upper : upper[j]) +
            1e-9 * static_cast<double>(j + 1);
  }
  sol = solve_once(milp, lo, up, params, &aborted);
  if (aborted) {
    sol = LpSolution{};
    sol.status = LpStatus::kInfeasible;
    sol.numerical_trouble = true;
  } else {
    sol.numerical_trouble = true;
  }
  return sol;
}

}  // namespace cnma
