#include <chrono>
#include <queue>

#include "pwrelax/milp.hpp"

namespace pwrelax {

std::string to_string(MipStatus s) {
  switch (s) {
    case MipStatus::Optimal: return "optimal";
    case MipStatus::Infeasible: return "infeasible";
    case MipStatus::Unbounded: return "unbounded";
    case MipStatus::Limit: return "limit";
  }
  return "?";
}

namespace {

using OptQ = std::optional<Rational>;

struct Node {
  long id = 0;
  Rational bound;  // parent LP value, minimisation sense
  std::vector<OptQ> lower, upper;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// Distance of a rational from the nearest integer, doubled (0 .. 1).
Rational fractionality(const Rational& x) {
  Rational f = x - x.floor();
  Rational g = Rational(1) - f;
  return (f < g ? f : g) * Rational(2);
}

}  // namespace

MipSolution mip_solve(const MilpModel& model, const MipOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  LpSolver lp(model);
  LpOptions lp_opts;
  lp_opts.rule = opts.rule;
  const bool maximize = model.maximize();
  auto to_min = [maximize](const Rational& v) { return maximize ? -v : v; };
  std::vector<VarId> ints = model.integer_variables();

  MipSolution out;
  std::optional<Rational> incumbent;  // minimisation sense
  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push({next_id++, Rational(0), lp.lower(), lp.upper()});
  bool first = true;
  bool limit_hit = false;

  while (!open.empty()) {
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.nodes >= opts.node_limit || elapsed > opts.time_limit_seconds) {
      limit_hit = true;
      break;
    }
    Node node = open.top();
    open.pop();
    if (!first && incumbent && node.bound >= *incumbent) continue;
    ++out.nodes;
    LpSolution sol = lp.solve(node.lower, node.upper, lp_opts);
    if (sol.status == LpStatus::Unbounded) {
      out.status = MipStatus::Unbounded;
      return out;
    }
    if (sol.status == LpStatus::Optimal) {
      Rational obj = to_min(sol.objective);
      if (!incumbent || obj < *incumbent) {
        // integer branching candidate
        int branch_var = -1;
        Rational best_frac;
        for (VarId v : ints) {
          const Rational& x = sol.values[static_cast<std::size_t>(v)];
          if (x.is_integer()) continue;
          Rational fr = fractionality(x);
          if (branch_var < 0 || fr > best_frac) {
            branch_var = v;
            best_frac = std::move(fr);
          }
        }
        if (branch_var >= 0) {
          const Rational& x = sol.values[static_cast<std::size_t>(branch_var)];
          Node down{next_id++, obj, node.lower, node.upper};
          down.upper[static_cast<std::size_t>(branch_var)] = x.floor();
          Node up{next_id++, obj, node.lower, node.upper};
          up.lower[static_cast<std::size_t>(branch_var)] = x.ceil();
          open.push(std::move(down));
          open.push(std::move(up));
        } else {
          // SOS2 branching
          bool branched = false;
          for (const auto& g : model.sos2()) {
            int f = -1, l = -1;
            for (int k = 0; k < static_cast<int>(g.vars.size()); ++k) {
              if (!sol.values[static_cast<std::size_t>(g.vars[static_cast<std::size_t>(k)])].is_zero()) {
                if (f < 0) f = k;
                l = k;
              }
            }
            if (f < 0 || l - f <= 1) continue;
            int s = (f + l) / 2;
            Node left{next_id++, obj, node.lower, node.upper};
            Node right{next_id++, obj, node.lower, node.upper};
            for (int k = 0; k < static_cast<int>(g.vars.size()); ++k) {
              auto v = static_cast<std::size_t>(g.vars[static_cast<std::size_t>(k)]);
              if (k > s) left.upper[v] = Rational(0);
              if (k < s) right.upper[v] = Rational(0);
            }
            open.push(std::move(left));
            open.push(std::move(right));
            branched = true;
            break;
          }
          if (!branched) {
            incumbent = obj;
            out.values = sol.values;
          }
        }
      }
    }
    first = false;
    // global bound: best open node, or the incumbent when nothing better remains
    std::optional<Rational> bound = incumbent;
    if (!open.empty() && (!bound || open.top().bound < *bound)) bound = open.top().bound;
    if (bound) out.dual_trace.push_back(maximize ? -*bound : *bound);
  }

  if (incumbent) out.primal = maximize ? -*incumbent : *incumbent;
  if (limit_hit) {
    out.status = MipStatus::Limit;
    std::optional<Rational> bound = incumbent;
    if (!open.empty() && (!bound || open.top().bound < *bound)) bound = open.top().bound;
    if (bound) out.dual = maximize ? -*bound : *bound;
    return out;
  }
  if (!incumbent) {
    out.status = MipStatus::Infeasible;
    return out;
  }
  out.status = MipStatus::Optimal;
  out.dual = out.primal;
  return out;
}

}  // namespace pwrelax
