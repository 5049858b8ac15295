#ifndef PWRELAX_MILP_HPP
#define PWRELAX_MILP_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pwrelax/rational.hpp"

namespace pwrelax {

using VarId = int;
using ConId = int;

enum class VarKind { Continuous, Binary, Integer };
enum class Sense { Le, Eq, Ge };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  std::optional<Rational> lower;  // nullopt = -infinity
  std::optional<Rational> upper;  // nullopt = +infinity
};

using Terms = std::vector<std::pair<VarId, Rational>>;

struct LinearExpr {
  Terms terms;
  Rational constant;

  LinearExpr() = default;
  LinearExpr(Rational c) : constant(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  static LinearExpr var(VarId v, Rational coef = 1);

  LinearExpr& add(VarId v, const Rational& coef);
  LinearExpr& operator+=(const LinearExpr& o);
  LinearExpr& operator-=(const LinearExpr& o);
  LinearExpr& operator*=(const Rational& s);
  friend LinearExpr operator+(LinearExpr a, const LinearExpr& b) { return a += b; }
  friend LinearExpr operator-(LinearExpr a, const LinearExpr& b) { return a -= b; }
  friend LinearExpr operator*(LinearExpr a, const Rational& s) { return a *= s; }

  // Merge repeated variables, drop zero coefficients, sort by variable.
  LinearExpr& normalize();
  Rational evaluate(const std::vector<Rational>& values) const;
};

// Row: terms (sense) rhs, with terms normalized and constants moved to rhs.
struct Constraint {
  std::string name;
  Terms terms;
  Sense sense = Sense::Le;
  Rational rhs;
};

struct Sos2Group {
  std::string name;
  std::vector<VarId> vars;
  std::vector<Rational> weights;
};

class MilpModel {
 public:
  explicit MilpModel(std::string name = "model") : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  // Binary variables get bounds [0, 1] regardless of the arguments.
  VarId add_variable(const std::string& name, VarKind kind, std::optional<Rational> lower = Rational(0),
                     std::optional<Rational> upper = std::nullopt);
  ConId add_constraint(const std::string& name, LinearExpr lhs, Sense sense, LinearExpr rhs = LinearExpr());
  void add_sos2(const std::string& name, std::vector<VarId> vars, std::vector<Rational> weights);
  void set_objective(bool maximize, LinearExpr expr);
  void remove_constraint(ConId id);

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(cons_.size()); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return cons_; }
  const std::vector<Sos2Group>& sos2() const { return sos2_; }
  const Variable& variable(VarId v) const { return vars_.at(static_cast<std::size_t>(v)); }
  Variable& variable(VarId v) { return vars_.at(static_cast<std::size_t>(v)); }
  const Constraint& constraint(ConId c) const { return cons_.at(static_cast<std::size_t>(c)); }
  Constraint& constraint(ConId c) { return cons_.at(static_cast<std::size_t>(c)); }
  bool maximize() const { return maximize_; }
  const LinearExpr& objective() const { return objective_; }

  std::optional<VarId> find_variable(const std::string& name) const;
  std::optional<ConId> find_constraint(const std::string& name) const;
  std::vector<VarId> integer_variables() const;

  // Exact feasibility of a full assignment (bounds, rows, integrality, SOS2).
  bool is_feasible(const std::vector<Rational>& values) const;

  bool operator==(const MilpModel& o) const;

 private:
  std::string name_;
  std::vector<Variable> vars_;
  std::vector<Constraint> cons_;
  std::vector<Sos2Group> sos2_;
  std::map<std::string, VarId> var_index_;
  std::map<std::string, ConId> con_index_;
  bool maximize_ = false;
  LinearExpr objective_;
};

enum class PivotRule { Bland, Dantzig };
enum class LpStatus { Optimal, Infeasible, Unbounded };
std::string to_string(LpStatus s);

struct LpOptions {
  PivotRule rule = PivotRule::Bland;
  long iteration_limit = 1000000;
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> values;  // one per model variable
  std::vector<VarId> basic;      // basic structural variables at the returned vertex
  long iterations = 0;
};

// Exact primal simplex on the continuous relaxation (integrality and SOS2 ignored).
class LpSolver {
 public:
  explicit LpSolver(const MilpModel& model);
  LpSolution solve(const LpOptions& opts = {}) const;
  // Same model with replaced variable bounds.
  LpSolution solve(const std::vector<std::optional<Rational>>& lower, const std::vector<std::optional<Rational>>& upper,
                   const LpOptions& opts = {}) const;

  const std::vector<std::optional<Rational>>& lower() const { return lower_; }
  const std::vector<std::optional<Rational>>& upper() const { return upper_; }

 private:
  const MilpModel& model_;
  std::vector<std::optional<Rational>> lower_, upper_;
};

LpSolution lp_solve(const MilpModel& model, const LpOptions& opts = {});

enum class MipStatus { Optimal, Infeasible, Unbounded, Limit };
std::string to_string(MipStatus s);

struct MipOptions {
  long node_limit = 200000;
  double time_limit_seconds = 3600.0;
  PivotRule rule = PivotRule::Bland;
};

struct MipSolution {
  MipStatus status = MipStatus::Infeasible;
  std::optional<Rational> primal;  // incumbent objective
  std::optional<Rational> dual;    // proven bound on the optimum
  std::vector<Rational> values;    // incumbent
  long nodes = 0;
  std::vector<Rational> dual_trace;  // global bound after each processed node
};

// Best-first branch and bound on most-fractional integers and on SOS2 groups.
MipSolution mip_solve(const MilpModel& model, const MipOptions& opts = {});

}  // namespace pwrelax

#endif
