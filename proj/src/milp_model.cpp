#include <algorithm>

#include "pwrelax/cdc.hpp"
#include "pwrelax/milp.hpp"

namespace pwrelax {

LinearExpr LinearExpr::var(VarId v, Rational coef) {
  LinearExpr e;
  e.terms.emplace_back(v, std::move(coef));
  return e;
}

LinearExpr& LinearExpr::add(VarId v, const Rational& coef) {
  terms.emplace_back(v, coef);
  return *this;
}

LinearExpr& LinearExpr::operator+=(const LinearExpr& o) {
  terms.insert(terms.end(), o.terms.begin(), o.terms.end());
  constant += o.constant;
  return *this;
}

LinearExpr& LinearExpr::operator-=(const LinearExpr& o) {
  for (const auto& [v, c] : o.terms) terms.emplace_back(v, -c);
  constant -= o.constant;
  return *this;
}

LinearExpr& LinearExpr::operator*=(const Rational& s) {
  for (auto& t : terms) t.second *= s;
  constant *= s;
  return *this;
}

LinearExpr& LinearExpr::normalize() {
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Terms merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(std::move(t));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& t) { return t.second.is_zero(); }), merged.end());
  terms = std::move(merged);
  return *this;
}

Rational LinearExpr::evaluate(const std::vector<Rational>& values) const {
  Rational r = constant;
  for (const auto& [v, c] : terms) r += c * values.at(static_cast<std::size_t>(v));
  return r;
}

VarId MilpModel::add_variable(const std::string& name, VarKind kind, std::optional<Rational> lower,
                              std::optional<Rational> upper) {
  if (name.empty() || name.find_first_of(" \t\n:") != std::string::npos) throw UsageError("bad variable name '" + name + "'");
  if (var_index_.count(name)) throw UsageError("duplicate variable name '" + name + "'");
  if (kind == VarKind::Binary) {
    lower = Rational(0);
    upper = Rational(1);
  }
  if (lower && upper && *upper < *lower) throw UsageError("variable '" + name + "' has empty bounds");
  VarId id = num_variables();
  vars_.push_back({name, kind, std::move(lower), std::move(upper)});
  var_index_[name] = id;
  return id;
}

ConId MilpModel::add_constraint(const std::string& name, LinearExpr lhs, Sense sense, LinearExpr rhs) {
  if (name.empty() || name.find_first_of(" \t\n:") != std::string::npos) throw UsageError("bad constraint name '" + name + "'");
  if (con_index_.count(name)) throw UsageError("duplicate constraint name '" + name + "'");
  lhs -= rhs;
  lhs.normalize();
  for (const auto& t : lhs.terms)
    if (t.first < 0 || t.first >= num_variables()) throw UsageError("constraint '" + name + "' uses an unknown variable");
  ConId id = num_constraints();
  cons_.push_back({name, std::move(lhs.terms), sense, -lhs.constant});
  con_index_[name] = id;
  return id;
}

void MilpModel::add_sos2(const std::string& name, std::vector<VarId> vars, std::vector<Rational> weights) {
  if (vars.size() != weights.size()) throw UsageError("SOS2 weights do not match its variables");
  for (std::size_t i = 1; i < weights.size(); ++i)
    if (!(weights[i - 1] < weights[i])) throw UsageError("SOS2 weights must be strictly increasing");
  for (VarId v : vars) {
    const auto& var = variable(v);
    if (!var.lower || var.lower->sign() != 0) throw UsageError("SOS2 members need lower bound 0");
  }
  sos2_.push_back({name, std::move(vars), std::move(weights)});
}

void MilpModel::set_objective(bool maximize, LinearExpr expr) {
  expr.normalize();
  maximize_ = maximize;
  objective_ = std::move(expr);
}

void MilpModel::remove_constraint(ConId id) {
  cons_.erase(cons_.begin() + id);
  con_index_.clear();
  for (int i = 0; i < num_constraints(); ++i) con_index_[cons_[static_cast<std::size_t>(i)].name] = i;
}

std::optional<VarId> MilpModel::find_variable(const std::string& name) const {
  auto it = var_index_.find(name);
  if (it == var_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ConId> MilpModel::find_constraint(const std::string& name) const {
  auto it = con_index_.find(name);
  if (it == con_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<VarId> MilpModel::integer_variables() const {
  std::vector<VarId> out;
  for (int i = 0; i < num_variables(); ++i)
    if (vars_[static_cast<std::size_t>(i)].kind != VarKind::Continuous) out.push_back(i);
  return out;
}

bool MilpModel::is_feasible(const std::vector<Rational>& values) const {
  if (static_cast<int>(values.size()) != num_variables()) return false;
  for (int i = 0; i < num_variables(); ++i) {
    const auto& v = vars_[static_cast<std::size_t>(i)];
    const Rational& x = values[static_cast<std::size_t>(i)];
    if (v.lower && x < *v.lower) return false;
    if (v.upper && x > *v.upper) return false;
    if (v.kind != VarKind::Continuous && !x.is_integer()) return false;
  }
  for (const auto& c : cons_) {
    Rational lhs;
    for (const auto& [v, a] : c.terms) lhs += a * values[static_cast<std::size_t>(v)];
    if (c.sense == Sense::Le && lhs > c.rhs) return false;
    if (c.sense == Sense::Ge && lhs < c.rhs) return false;
    if (c.sense == Sense::Eq && lhs != c.rhs) return false;
  }
  for (const auto& g : sos2_) {
    int first = -1, last = -1;
    for (int k = 0; k < static_cast<int>(g.vars.size()); ++k) {
      if (!values[static_cast<std::size_t>(g.vars[static_cast<std::size_t>(k)])].is_zero()) {
        if (first < 0) first = k;
        last = k;
      }
    }
    if (first >= 0 && last - first > 1) return false;
  }
  return true;
}

bool MilpModel::operator==(const MilpModel& o) const {
  auto same_var = [](const Variable& a, const Variable& b) {
    return a.name == b.name && a.kind == b.kind && a.lower == b.lower && a.upper == b.upper;
  };
  auto same_con = [](const Constraint& a, const Constraint& b) {
    return a.name == b.name && a.terms == b.terms && a.sense == b.sense && a.rhs == b.rhs;
  };
  if (vars_.size() != o.vars_.size() || cons_.size() != o.cons_.size() || sos2_.size() != o.sos2_.size()) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (!same_var(vars_[i], o.vars_[i])) return false;
  for (std::size_t i = 0; i < cons_.size(); ++i)
    if (!same_con(cons_[i], o.cons_[i])) return false;
  for (std::size_t i = 0; i < sos2_.size(); ++i)
    if (sos2_[i].name != o.sos2_[i].name || sos2_[i].vars != o.sos2_[i].vars || sos2_[i].weights != o.sos2_[i].weights)
      return false;
  return maximize_ == o.maximize_ && objective_.terms == o.objective_.terms && objective_.constant == o.objective_.constant;
}

}  // namespace pwrelax
