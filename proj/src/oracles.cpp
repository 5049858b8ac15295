#include "pwrelax/oracles.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pwrelax/bicliques.hpp"

namespace pwrelax {

namespace {

OracleResult fail(std::string witness, std::string detail = "") { return {false, std::move(witness), std::move(detail)}; }

std::string bits(const std::vector<Rational>& z) {
  std::string s;
  for (const auto& v : z) s += (s.empty() ? "" : ",") + v.str();
  return "z=(" + s + ")";
}

bool inside_some_set(const IndexSet& s, const CdcFamily& fam) {
  for (const auto& set : fam.sets())
    if (is_subset(s, set)) return true;
  return false;
}

// Integer assignments of `vars` within their model bounds.
std::vector<std::vector<Rational>> integer_assignments(const MilpModel& model, const std::vector<VarId>& vars, long cap) {
  std::vector<std::vector<Rational>> out = {{}};
  for (VarId v : vars) {
    const Variable& var = model.variable(v);
    if (!var.lower || !var.upper) throw UsageError("integer variable '" + var.name + "' needs finite bounds");
    std::vector<std::vector<Rational>> next;
    for (const auto& prefix : out) {
      for (Rational k = var.lower->ceil(); k <= *var.upper; k += Rational(1)) {
        auto p = prefix;
        p.push_back(k);
        next.push_back(std::move(p));
        if (static_cast<long>(next.size()) > cap) throw UsageError("too many integer assignments to enumerate");
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

bool VerificationReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void VerificationReport::add(const std::string& name, const OracleResult& r, double seconds) {
  checks.push_back({name, r.pass, r.witness, r.detail, seconds});
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["passed"] = passed();
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    if (!c.witness.empty()) e["witness"] = c.witness;
    if (!c.detail.empty()) e["detail"] = c.detail;
    e["seconds"] = c.seconds;
    j["checks"].push_back(e);
  }
  return j.dump(2);
}

std::string VerificationReport::table() const {
  std::ostringstream os;
  std::size_t w = 10;
  for (const auto& c : checks) w = std::max(w, c.name.size());
  for (const auto& c : checks) {
    os << std::left << std::setw(static_cast<int>(w)) << c.name << "  " << (c.pass ? "PASS" : "FAIL");
    os << "  " << std::fixed << std::setprecision(3) << c.seconds << "s";
    if (!c.detail.empty()) os << "  " << c.detail;
    if (!c.pass && !c.witness.empty()) os << "  witness: " << c.witness;
    os << '\n';
  }
  return os.str();
}

OracleResult support_union_check(const CdcFamily& fam, const MilpModel& model, const FormulationArtifacts& art) {
  if (static_cast<int>(art.lambda.size()) != fam.ground_size()) throw UsageError("lambda variables do not match the ground set");
  const int t = static_cast<int>(art.integers.size());
  if (t > 16) throw UsageError("support_union_check is limited to 16 binaries");
  std::map<VarId, int> lam_of, z_of;
  for (int v = 0; v < fam.ground_size(); ++v) lam_of[art.lambda[static_cast<std::size_t>(v)]] = v + 1;
  for (int j = 0; j < t; ++j) {
    if (model.variable(art.integers[static_cast<std::size_t>(j)]).kind != VarKind::Binary)
      throw UsageError("support_union_check needs binary variables");
    z_of[art.integers[static_cast<std::size_t>(j)]] = j;
  }
  std::vector<IndexSet> L(static_cast<std::size_t>(t)), R(static_cast<std::size_t>(t));
  for (const auto& c : model.constraints()) {
    IndexSet lam;
    int zj = -1, zcoef = 0;
    bool foreign = false, unit = true;
    for (const auto& [v, a] : c.terms) {
      if (auto it = lam_of.find(v); it != lam_of.end()) {
        lam.push_back(it->second);
        unit = unit && a == Rational(1);
      } else if (auto jt = z_of.find(v); jt != z_of.end()) {
        if (zj >= 0) unit = false;
        zj = jt->second;
        zcoef = a == Rational(1) ? 1 : a == Rational(-1) ? -1 : 0;
      } else {
        foreign = true;
      }
    }
    if (foreign) continue;  // linking rows of attached models
    std::sort(lam.begin(), lam.end());
    if (zj < 0 && c.sense == Sense::Eq && c.rhs == Rational(1) && unit && static_cast<int>(lam.size()) == fam.ground_size()) continue;
    if (zj >= 0 && unit && c.sense == Sense::Le && zcoef == -1 && c.rhs.is_zero()) {
      L[static_cast<std::size_t>(zj)] = set_union(L[static_cast<std::size_t>(zj)], lam);
      continue;
    }
    if (zj >= 0 && unit && c.sense == Sense::Le && zcoef == 1 && c.rhs == Rational(1)) {
      R[static_cast<std::size_t>(zj)] = set_union(R[static_cast<std::size_t>(zj)], lam);
      continue;
    }
    throw UsageError("row '" + c.name + "' is not of support-killing form");
  }
  IndexSet all;
  for (int v = 1; v <= fam.ground_size(); ++v) all.push_back(v);
  std::vector<char> covered(static_cast<std::size_t>(fam.size()), 0);
  for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
    IndexSet killed;
    for (int j = 0; j < t; ++j) killed = set_union(killed, (mask >> j) & 1u ? R[static_cast<std::size_t>(j)] : L[static_cast<std::size_t>(j)]);
    IndexSet allowed = set_difference(all, killed);
    std::string zs;
    for (int j = 0; j < t; ++j) zs += ((mask >> j) & 1u) ? '1' : '0';
    if (!allowed.empty() && !inside_some_set(allowed, fam)) return fail("z=" + zs + " allows " + to_string(allowed), "allowed support outside the family");
    for (int i = 0; i < fam.size(); ++i)
      if (is_subset(fam.set(i), allowed)) covered[static_cast<std::size_t>(i)] = 1;
  }
  for (int i = 0; i < fam.size(); ++i)
    if (!covered[static_cast<std::size_t>(i)]) return fail("set " + std::to_string(i + 1) + " " + to_string(fam.set(i)), "set not covered by any A(z)");
  return {};
}

OracleResult extended_union_check(const CdcFamily& fam, const MilpModel& model, const FormulationArtifacts& art, int samples,
                                  std::uint64_t seed) {
  const int n = fam.ground_size();
  if (static_cast<int>(art.lambda_expr.size()) != n) throw UsageError("lambda expressions do not match the ground set");
  Rng rng(seed);
  MilpModel work = model;
  work.set_objective(false, LinearExpr());
  auto assignments = integer_assignments(model, art.integers, 1L << 12);
  LpSolver base(work);
  auto lower = base.lower(), upper = base.upper();
  auto fix = [&](const std::vector<Rational>& z) {
    auto lo = lower, up = upper;
    for (std::size_t k = 0; k < z.size(); ++k) {
      lo[static_cast<std::size_t>(art.integers[k])] = z[k];
      up[static_cast<std::size_t>(art.integers[k])] = z[k];
    }
    return std::make_pair(lo, up);
  };
  auto lambda_at = [&](const std::vector<Rational>& values) {
    std::vector<Rational> lam;
    for (const auto& e : art.lambda_expr) lam.push_back(e.evaluate(values));
    return lam;
  };

  std::vector<std::vector<Rational>> feasible;
  for (const auto& z : assignments) {
    auto [lo, up] = fix(z);
    LpSolution s = base.solve(lo, up);
    if (s.status != LpStatus::Optimal) continue;
    feasible.push_back(z);
    // soundness
    IndexSet support;
    std::vector<std::vector<Rational>> points = {lambda_at(s.values)};
    for (int k = 0; k < samples; ++k) {
      MilpModel obj = work;
      LinearExpr e;
      for (int v = 0; v < n; ++v) e += art.lambda_expr[static_cast<std::size_t>(v)] * Rational(rng.integer(-100, 100));
      obj.set_objective(false, e);
      LpSolution sk = LpSolver(obj).solve(lo, up);
      if (sk.status == LpStatus::Unbounded) return fail(bits(z), "unbounded lambda objective");
      if (sk.status == LpStatus::Optimal) points.push_back(lambda_at(sk.values));
    }
    for (const auto& lam : points) {
      Rational sum;
      std::string lam_text;
      for (int v = 0; v < n; ++v) {
        const Rational& x = lam[static_cast<std::size_t>(v)];
        sum += x;
        if (x.sign() < 0) return fail(bits(z) + " lambda" + std::to_string(v + 1) + "=" + x.str(), "negative weight");
        if (!x.is_zero()) support.push_back(v + 1);
      }
      if (sum != Rational(1)) return fail(bits(z) + " sum=" + sum.str(), "weights do not sum to one");
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (!inside_some_set(support, fam)) return fail(bits(z) + " support " + to_string(support), "support outside the family");
  }

  // completeness
  for (int i = 0; i < fam.size(); ++i) {
    const IndexSet& s = fam.set(i);
    std::vector<std::map<int, Rational>> targets;
    for (ElementId v : s) targets.push_back({{v, Rational(1)}});
    std::map<int, Rational> centroid;
    for (ElementId v : s) centroid[v] = Rational(1, static_cast<long long>(s.size()));
    targets.push_back(centroid);
    for (const auto& target : targets) {
      MilpModel pinned = work;
      for (int v = 1; v <= n; ++v) {
        auto it = target.find(v);
        pinned.add_constraint("oracle.pin." + std::to_string(v), art.lambda_expr[static_cast<std::size_t>(v - 1)], Sense::Eq,
                              LinearExpr(it == target.end() ? Rational(0) : it->second));
      }
      LpSolver solver(pinned);
      bool reached = false;
      for (const auto& z : feasible) {
        auto [lo, up] = fix(z);
        auto lo2 = solver.lower(), up2 = solver.upper();
        for (std::size_t k = 0; k < lo.size(); ++k) {
          lo2[k] = lo[k];
          up2[k] = up[k];
        }
        if (solver.solve(lo2, up2).status == LpStatus::Optimal) {
          reached = true;
          break;
        }
      }
      if (!reached) {
        std::string t;
        for (const auto& [v, w] : target) t += " lambda" + std::to_string(v) + "=" + w.str();
        return fail("set " + std::to_string(i + 1) + t, "point of the family not representable");
      }
    }
  }
  OracleResult r;
  r.detail = std::to_string(feasible.size()) + " feasible assignments";
  return r;
}

IdealityResult ideality_check(const MilpModel& model, const FormulationArtifacts& art, int trials, std::uint64_t seed,
                              bool informational) {
  Rng rng(seed);
  IdealityResult res;
  std::vector<LinearExpr> terms;
  if (!art.lambda.empty())
    for (VarId v : art.lambda) terms.push_back(LinearExpr::var(v));
  else
    terms = art.lambda_expr;
  for (VarId z : art.integers) terms.push_back(LinearExpr::var(z));
  MilpModel work = model;
  for (int t = 0; t < trials; ++t) {
    LinearExpr obj;
    for (const auto& e : terms) {
      long long c = 0;
      while (c == 0) c = rng.integer(-100, 100);
      obj += e * Rational(c);
    }
    work.set_objective(false, obj);
    LpSolution s = lp_solve(work);
    ++res.trials;
    if (s.status != LpStatus::Optimal) {
      res.pass = false;
      res.witness = "trial " + std::to_string(t) + ": LP " + to_string(s.status);
      return res;
    }
    for (VarId z : art.integers) {
      if (!s.values[static_cast<std::size_t>(z)].is_integer()) {
        ++res.fractional;
        if (res.witness.empty())
          res.witness = "trial " + std::to_string(t) + ": " + model.variable(z).name + "=" + s.values[static_cast<std::size_t>(z)].str();
        break;
      }
    }
  }
  res.pass = informational || res.fractional == 0;
  return res;
}

OracleResult envelope_soundness(const Relaxation1D& relax, const ScalarFunction& f, int samples, std::uint64_t seed, double tol) {
  Rng rng(seed);
  double lo = relax.lo.to_double(), hi = relax.hi.to_double();
  for (int k = 0; k < samples; ++k) {
    double x = rng.uniform(lo, hi);
    double y = f.f(x);
    std::ostringstream w;
    w << std::setprecision(17) << "x=" << x << " f(x)=" << y;
    if (pwl_eval(relax.lower, x) > y + tol) return fail(w.str(), "lower bound above the function");
    if (pwl_eval(relax.upper, x) < y - tol) return fail(w.str(), "upper bound below the function");
    if (!relaxation_contains(relax, x, y, tol)) return fail(w.str(), "point outside every piece");
  }
  return {};
}

OracleResult dual_bound_validity(double relaxed_optimum, bool maximize,
                                 const std::function<std::optional<double>(Rng&)>& sample_objective, int samples,
                                 std::uint64_t seed, double tol) {
  Rng rng(seed);
  int accepted = 0;
  for (int k = 0; k < samples; ++k) {
    auto v = sample_objective(rng);
    if (!v) continue;
    ++accepted;
    bool ok = maximize ? relaxed_optimum >= *v - tol : relaxed_optimum <= *v + tol;
    if (!ok) {
      std::ostringstream w;
      w << std::setprecision(17) << "sample " << k << " objective " << *v << " beats bound " << relaxed_optimum;
      return fail(w.str(), "relaxation bound violated");
    }
  }
  OracleResult r;
  r.detail = std::to_string(accepted) + " feasible samples";
  if (accepted == 0) {
    r.pass = false;
    r.detail = "no feasible samples";
  }
  return r;
}

}  // namespace pwrelax
