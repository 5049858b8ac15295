#include <stdexcept>

#include "pwrelax/cdc.hpp"
#include "pwrelax/milp.hpp"

namespace pwrelax {

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

using OptQ = std::optional<Rational>;

enum class At { Lower, Upper, Zero, Basic };

// Bounded-variable primal simplex on a dense tableau kept in basis-inverse form.
// Columns: structural variables, then one slack per inequality row, then artificials.
class Tableau {
 public:
  Tableau(const MilpModel& model, const std::vector<OptQ>& lower, const std::vector<OptQ>& upper, const LpOptions& opts)
      : opts_(opts) {
    const int n = model.num_variables();
    const int m = model.num_constraints();
    n_struct_ = n;
    lb_ = lower;
    ub_ = upper;
    for (int j = 0; j < n; ++j)
      if (lb_[static_cast<std::size_t>(j)] && ub_[static_cast<std::size_t>(j)] &&
          *ub_[static_cast<std::size_t>(j)] < *lb_[static_cast<std::size_t>(j)])
        empty_bounds_ = true;
    // nonbasic starting values
    value_.resize(static_cast<std::size_t>(n));
    at_.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      auto uj = static_cast<std::size_t>(j);
      if (lb_[uj]) {
        value_[uj] = *lb_[uj];
        at_[uj] = At::Lower;
      } else if (ub_[uj]) {
        value_[uj] = *ub_[uj];
        at_[uj] = At::Upper;
      } else {
        value_[uj] = Rational(0);
        at_[uj] = At::Zero;
      }
    }
    std::vector<int> slack_col(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
      const auto& c = model.constraint(i);
      if (c.sense == Sense::Eq) continue;
      slack_col[static_cast<std::size_t>(i)] = static_cast<int>(lb_.size());
      if (c.sense == Sense::Le) {
        lb_.emplace_back(Rational(0));
        ub_.emplace_back(std::nullopt);
      } else {
        lb_.emplace_back(std::nullopt);
        ub_.emplace_back(Rational(0));
      }
      value_.emplace_back(0);
      at_.push_back(c.sense == Sense::Le ? At::Lower : At::Upper);
    }
    std::vector<Rational> resid(static_cast<std::size_t>(m));
    std::vector<int> art_sign(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
      const auto& c = model.constraint(i);
      Rational r = c.rhs;
      for (const auto& [v, a] : c.terms) r -= a * value_[static_cast<std::size_t>(v)];
      int s = slack_col[static_cast<std::size_t>(i)];
      bool slack_ok = s >= 0 && ((c.sense == Sense::Le && r.sign() >= 0) || (c.sense == Sense::Ge && r.sign() <= 0));
      if (!slack_ok) art_sign[static_cast<std::size_t>(i)] = r.sign() < 0 ? -1 : 1;
      resid[static_cast<std::size_t>(i)] = std::move(r);
    }
    first_art_ = static_cast<int>(lb_.size());
    std::vector<int> art_col(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
      if (!art_sign[static_cast<std::size_t>(i)]) continue;
      art_col[static_cast<std::size_t>(i)] = static_cast<int>(lb_.size());
      lb_.emplace_back(Rational(0));
      ub_.emplace_back(std::nullopt);
      value_.emplace_back(0);
      at_.push_back(At::Lower);
    }
    ncols_ = static_cast<int>(lb_.size());
    rows_.assign(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(ncols_)));
    basis_.assign(static_cast<std::size_t>(m), -1);
    for (int i = 0; i < m; ++i) {
      auto ui = static_cast<std::size_t>(i);
      auto& row = rows_[ui];
      const auto& c = model.constraint(i);
      for (const auto& [v, a] : c.terms) row[static_cast<std::size_t>(v)] = a;
      if (slack_col[ui] >= 0) row[static_cast<std::size_t>(slack_col[ui])] = Rational(1);
      if (art_sign[ui]) {
        int a = art_col[ui];
        row[static_cast<std::size_t>(a)] = Rational(art_sign[ui]);
        if (art_sign[ui] < 0)
          for (auto& x : row) x = -x;
        basis_[ui] = a;
        value_[static_cast<std::size_t>(a)] = resid[ui].abs();
        at_[static_cast<std::size_t>(a)] = At::Basic;
      } else {
        int s = slack_col[ui];
        basis_[ui] = s;
        value_[static_cast<std::size_t>(s)] = resid[ui];
        at_[static_cast<std::size_t>(s)] = At::Basic;
      }
    }
    cost_.assign(static_cast<std::size_t>(ncols_), Rational(0));
    const bool maximize = model.maximize();
    for (const auto& [v, a] : model.objective().terms) cost_[static_cast<std::size_t>(v)] = maximize ? -a : a;
  }

  LpSolution run(const MilpModel& model) {
    LpSolution sol;
    if (empty_bounds_) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    bool has_art = first_art_ < ncols_;
    if (has_art) {
      Rational infeas;
      for (int j = first_art_; j < ncols_; ++j) infeas += value_[static_cast<std::size_t>(j)];
      if (infeas.sign() > 0) {
        std::vector<Rational> phase1(static_cast<std::size_t>(ncols_));
        for (int j = first_art_; j < ncols_; ++j) phase1[static_cast<std::size_t>(j)] = Rational(1);
        compute_reduced(phase1);
        if (!iterate()) throw std::logic_error("phase one cannot be unbounded");
        infeas = Rational(0);
        for (int j = first_art_; j < ncols_; ++j) infeas += value_[static_cast<std::size_t>(j)];
        if (infeas.sign() > 0) {
          sol.status = LpStatus::Infeasible;
          sol.iterations = iterations_;
          return sol;
        }
      }
      // artificials stay at zero from here on
      for (int j = first_art_; j < ncols_; ++j) {
        auto uj = static_cast<std::size_t>(j);
        ub_[uj] = Rational(0);
        if (at_[uj] != At::Basic) at_[uj] = At::Lower;
      }
    }
    compute_reduced(cost_);
    bool bounded = iterate();
    sol.iterations = iterations_;
    if (!bounded) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
    sol.status = LpStatus::Optimal;
    sol.values.assign(value_.begin(), value_.begin() + n_struct_);
    sol.objective = model.objective().evaluate(sol.values);
    for (int b : basis_)
      if (b < n_struct_) sol.basic.push_back(b);
    return sol;
  }

 private:
  void compute_reduced(const std::vector<Rational>& c) {
    active_cost_ = c;
    red_ = c;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = c[static_cast<std::size_t>(basis_[i])];
      if (cb.is_zero()) continue;
      const auto& row = rows_[i];
      for (int j = 0; j < ncols_; ++j)
        if (!row[static_cast<std::size_t>(j)].is_zero()) red_[static_cast<std::size_t>(j)] -= cb * row[static_cast<std::size_t>(j)];
    }
  }

  // Direction in which nonbasic column j improves the objective, or 0.
  int improving_direction(int j) const {
    auto uj = static_cast<std::size_t>(j);
    const Rational& d = red_[uj];
    int s = d.sign();
    if (s == 0) return 0;
    switch (at_[uj]) {
      case At::Lower:
        if (s < 0 && (!ub_[uj] || *ub_[uj] > *lb_[uj])) return 1;
        return 0;
      case At::Upper:
        if (s > 0 && (!lb_[uj] || *lb_[uj] < *ub_[uj])) return -1;
        return 0;
      case At::Zero:
        return s < 0 ? 1 : -1;
      case At::Basic:
        return 0;
    }
    return 0;
  }

  // Returns false if the objective is unbounded below.
  bool iterate() {
    int degenerate_run = 0;
    for (;;) {
      if (++iterations_ > opts_.iteration_limit) throw std::runtime_error("simplex iteration limit reached");
      bool use_bland = opts_.rule == PivotRule::Bland || degenerate_run > 50;
      int q = -1, dir = 0;
      Rational best;
      for (int j = 0; j < ncols_; ++j) {
        int dj = improving_direction(j);
        if (!dj) continue;
        if (use_bland) {
          q = j;
          dir = dj;
          break;
        }
        Rational mag = red_[static_cast<std::size_t>(j)].abs();
        if (q < 0 || mag > best) {
          q = j;
          dir = dj;
          best = std::move(mag);
        }
      }
      if (q < 0) return true;
      auto uq = static_cast<std::size_t>(q);

      // ratio test
      int leave_row = -1;
      bool to_lower = false;
      OptQ theta;
      if (lb_[uq] && ub_[uq]) theta = *ub_[uq] - *lb_[uq];
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][uq];
        if (a.is_zero()) continue;
        int b = basis_[i];
        auto ub = static_cast<std::size_t>(b);
        int alpha_sign = a.sign() * dir;
        Rational ratio;
        bool hits_lower;
        if (alpha_sign > 0) {
          if (!lb_[ub]) continue;
          ratio = (value_[ub] - *lb_[ub]) / a.abs();
          hits_lower = true;
        } else {
          if (!ub_[ub]) continue;
          ratio = (*ub_[ub] - value_[ub]) / a.abs();
          hits_lower = false;
        }
        bool better = !theta || ratio < *theta ||
                      (ratio == *theta && leave_row >= 0 && b < basis_[static_cast<std::size_t>(leave_row)]);
        if (better) {
          theta = std::move(ratio);
          leave_row = static_cast<int>(i);
          to_lower = hits_lower;
        }
      }
      if (!theta) return false;
      degenerate_run = theta->is_zero() ? degenerate_run + 1 : 0;

      if (!theta->is_zero()) {
        Rational step = dir > 0 ? *theta : -*theta;
        value_[uq] += step;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
          const Rational& a = rows_[i][uq];
          if (!a.is_zero()) value_[static_cast<std::size_t>(basis_[i])] -= a * step;
        }
      }
      if (leave_row < 0) {
        // bound flip
        at_[uq] = dir > 0 ? At::Upper : At::Lower;
        value_[uq] = dir > 0 ? *ub_[uq] : *lb_[uq];
        continue;
      }
      int out = basis_[static_cast<std::size_t>(leave_row)];
      auto uo = static_cast<std::size_t>(out);
      at_[uo] = to_lower ? At::Lower : At::Upper;
      value_[uo] = to_lower ? *lb_[uo] : *ub_[uo];
      pivot(leave_row, q);
    }
  }

  void pivot(int r, int q) {
    auto ur = static_cast<std::size_t>(r);
    auto uq = static_cast<std::size_t>(q);
    auto& prow = rows_[ur];
    Rational inv = Rational(1) / prow[uq];
    std::vector<int> nz;
    for (int j = 0; j < ncols_; ++j) {
      auto& x = prow[static_cast<std::size_t>(j)];
      if (x.is_zero()) continue;
      x *= inv;
      nz.push_back(j);
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == ur) continue;
      auto& row = rows_[i];
      if (row[uq].is_zero()) continue;
      Rational f = row[uq];
      for (int j : nz) row[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
    }
    if (!red_[uq].is_zero()) {
      Rational f = red_[uq];
      for (int j : nz) red_[static_cast<std::size_t>(j)] -= f * prow[static_cast<std::size_t>(j)];
    }
    at_[uq] = At::Basic;
    basis_[ur] = q;
  }

  LpOptions opts_;
  int n_struct_ = 0;
  int first_art_ = 0;
  int ncols_ = 0;
  bool empty_bounds_ = false;
  long iterations_ = 0;
  std::vector<OptQ> lb_, ub_;
  std::vector<Rational> value_;
  std::vector<At> at_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> basis_;
  std::vector<Rational> cost_, active_cost_, red_;
};

}  // namespace

LpSolver::LpSolver(const MilpModel& model) : model_(model) {
  for (const auto& v : model.variables()) {
    lower_.push_back(v.lower);
    upper_.push_back(v.upper);
  }
}

LpSolution LpSolver::solve(const LpOptions& opts) const { return solve(lower_, upper_, opts); }

LpSolution LpSolver::solve(const std::vector<std::optional<Rational>>& lower,
                           const std::vector<std::optional<Rational>>& upper, const LpOptions& opts) const {
  if (static_cast<int>(lower.size()) != model_.num_variables() || static_cast<int>(upper.size()) != model_.num_variables())
    throw UsageError("bound vectors do not match the model");
  Tableau t(model_, lower, upper, opts);
  return t.run(model_);
}

LpSolution lp_solve(const MilpModel& model, const LpOptions& opts) { return LpSolver(model).solve(opts); }

}  // namespace pwrelax
