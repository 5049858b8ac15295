#include "pwrelax/instances.hpp"

#include <cmath>
#include <numbers>

namespace pwrelax {

namespace {

Rational pow10(int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= Rational(10);
  return r;
}

Rational round_down(const Rational& v, int digits) {
  Rational s = pow10(digits);
  return (v * s).floor() / s;
}

Rational round_up(const Rational& v, int digits) {
  Rational s = pow10(digits);
  return (v * s).ceil() / s;
}

struct RelaxedValue {
  VarId y;
  std::optional<FormulationArtifacts> art;
};

// y relaxes f(x) for x in [lo, hi]. The relaxation domain is rounded outward to
// the snapping grid so that it always covers [lo, hi].
RelaxedValue relax_on(MilpModel& model, const ScalarFunction& f, VarId x, const Rational& lo, const Rational& hi,
                      const MethodTag& tag, const RelaxationConfig& cfg, const std::string& block) {
  if (lo == hi) {
    Rational c = Rational::snap_decimal(f.f(lo.to_double()), cfg.snap_digits);
    VarId y = model.add_variable(block + "_y", VarKind::Continuous, c, c);
    return {y, std::nullopt};
  }
  Rational a = round_down(lo, cfg.snap_digits);
  Rational b = round_up(hi, cfg.snap_digits);
  Relaxation1D r = build_relaxation(f, a.to_double(), b.to_double(), cfg);
  if (r.lo > lo || r.hi < hi) throw StructureError("relaxation domain does not cover [" + lo.str() + ", " + hi.str() + "]");
  FormulationArtifacts art = attach_relaxation(model, r, tag, block, x);
  return {art.y.at(0), art};
}

Rational uniform_decimal(Rng& rng, long long lo_k, long long hi_k, long long scale) {
  return Rational(rng.integer(lo_k, hi_k), scale);
}

}  // namespace

void KinematicsInstance::validate() const {
  if (n < 1) throw UsageError("kinematics instance needs n >= 1");
  if (links.size() != static_cast<std::size_t>(n) || lower.size() != links.size() || upper.size() != links.size())
    throw UsageError("kinematics instance arrays must have length n");
  for (int i = 0; i < n; ++i)
    if (lower[i] > upper[i]) throw UsageError("joint " + std::to_string(i + 1) + " has lower > upper");
}

KinematicsInstance gen_kinematics(int n, std::uint64_t seed) {
  if (n < 1) throw UsageError("kinematics instance needs n >= 1");
  Rng rng(seed);
  KinematicsInstance k;
  k.n = n;
  k.seed = seed;
  Rational reach(0);
  for (int i = 0; i < n; ++i) {
    Rational len = uniform_decimal(rng, 500, 1500, 1000);
    reach += len;
    k.links.push_back({len, Rational(0)});
    double half = i == 0 ? std::numbers::pi / 2 : std::numbers::pi / 4;
    Rational b = Rational::snap_decimal(half, 6);
    k.lower.push_back(-b);
    k.upper.push_back(b);
  }
  double r = reach.to_double() * std::sqrt(rng.uniform());
  double ang = 2.0 * std::numbers::pi * rng.uniform();
  k.x_des = {Rational::snap_decimal(r * std::cos(ang), 3), Rational::snap_decimal(r * std::sin(ang), 3)};
  Rational lo(0), hi(0);
  for (int i = 0; i < n; ++i) {
    lo += k.lower[i];
    hi += k.upper[i];
  }
  k.theta_des = Rational::snap_decimal(rng.uniform(lo.to_double(), hi.to_double()), 3);
  k.theta_init = Rational(0);
  k.beta = Rational(1, 10);
  return k;
}

void SocInstance::validate() const {
  if (v < 1 || S < 1 || eta < 1) throw UsageError("share-of-choice sizes must be positive");
  if (C.sign() < 0) throw UsageError("share-of-choice floor C must be nonnegative");
  if (shares.size() != static_cast<std::size_t>(v) || u.size() != shares.size() || beta.size() != shares.size())
    throw UsageError("share-of-choice arrays must have length v");
  for (const auto& s : shares)
    if (s.sign() < 0) throw UsageError("shares must be nonnegative");
  for (const auto& bi : beta) {
    if (bi.size() != static_cast<std::size_t>(S)) throw UsageError("beta needs S scenarios per customer type");
    for (const auto& bis : bi)
      if (bis.size() != static_cast<std::size_t>(eta)) throw UsageError("beta vectors need eta entries");
  }
}

SocInstance gen_soc(int v, int S, int eta, const Rational& C, std::uint64_t seed) {
  if (v < 1 || S < 1 || eta < 1) throw UsageError("share-of-choice sizes must be positive");
  Rng rng(seed);
  SocInstance inst;
  inst.v = v;
  inst.S = S;
  inst.eta = eta;
  inst.seed = seed;
  inst.C = C;
  inst.beta.assign(v, std::vector<std::vector<Rational>>(S, std::vector<Rational>(eta)));
  for (int i = 0; i < v; ++i)
    for (int s = 0; s < S; ++s)
      for (int j = 0; j < eta; ++j) inst.beta[i][s][j] = uniform_decimal(rng, -1000, 1000, 1000);
  for (int i = 0; i < v; ++i) inst.u.push_back(uniform_decimal(rng, 0, 250LL * eta, 1000));
  std::vector<long long> w;
  long long total = 0;
  for (int i = 0; i < v; ++i) {
    w.push_back(rng.integer(1, 100));
    total += w.back();
  }
  for (long long k : w) inst.shares.emplace_back(k, total);
  return inst;
}

InstanceModel build_kinematics_model(const KinematicsInstance& inst, const MethodTag& tag, const RelaxationConfig& cfg) {
  inst.validate();
  InstanceModel im{MilpModel("kinematics"), {}, {}};
  MilpModel& m = im.model;
  for (int i = 0; i < inst.n; ++i)
    im.decision.push_back(m.add_variable("theta" + std::to_string(i + 1), VarKind::Continuous, inst.lower[i], inst.upper[i]));

  ScalarFunction fs = function_by_name("sin"), fc = function_by_name("cos");
  LinearExpr xsum[2];
  LinearExpr partial;
  Rational lo(0), hi(0);
  for (int i = 0; i < inst.n; ++i) {
    std::string id = std::to_string(i + 1);
    partial.add(im.decision[i], 1);
    lo += inst.lower[i];
    hi += inst.upper[i];
    VarId phi = m.add_variable("phi" + id, VarKind::Continuous, lo, hi);
    m.add_constraint("phi" + id, LinearExpr::var(phi), Sense::Eq, partial);
    RelaxedValue s = relax_on(m, fs, phi, lo, hi, tag, cfg, "sin" + id);
    RelaxedValue c = relax_on(m, fc, phi, lo, hi, tag, cfg, "cos" + id);
    if (s.art) im.blocks.push_back(*s.art);
    if (c.art) im.blocks.push_back(*c.art);
    const auto& v = inst.links[i];
    // Rotation of v by phi.
    xsum[0] += LinearExpr::var(c.y, v[0]) - LinearExpr::var(s.y, v[1]);
    xsum[1] += LinearExpr::var(s.y, v[0]) + LinearExpr::var(c.y, v[1]);
  }

  LinearExpr obj;
  for (int k = 0; k < 2; ++k) {
    std::string id = std::to_string(k + 1);
    VarId t = m.add_variable("tx" + id, VarKind::Continuous, std::nullopt);
    LinearExpr diff = xsum[k] - LinearExpr(inst.x_des[k]);
    m.add_constraint("tx" + id + "_pos", LinearExpr::var(t), Sense::Ge, diff);
    m.add_constraint("tx" + id + "_neg", LinearExpr::var(t), Sense::Ge, diff * Rational(-1));
    obj.add(t, 1);
  }
  VarId tt = m.add_variable("ttheta", VarKind::Continuous, std::nullopt);
  LinearExpr dtheta = partial + LinearExpr(inst.theta_init - inst.theta_des);
  m.add_constraint("ttheta_pos", LinearExpr::var(tt), Sense::Ge, dtheta);
  m.add_constraint("ttheta_neg", LinearExpr::var(tt), Sense::Ge, dtheta * Rational(-1));
  obj.add(tt, inst.beta);
  m.set_objective(false, obj);
  return im;
}

InstanceModel build_soc_model(const SocInstance& inst, const MethodTag& tag, const RelaxationConfig& cfg) {
  inst.validate();
  InstanceModel im{MilpModel("share_of_choice"), {}, {}};
  MilpModel& m = im.model;
  for (int j = 0; j < inst.eta; ++j)
    im.decision.push_back(m.add_variable("x" + std::to_string(j + 1), VarKind::Continuous, Rational(0), Rational(1)));

  // mu = a . x over the unit box ranges over [sum of negative a_j, sum of positive a_j].
  auto affine = [&](const std::vector<Rational>& a, Rational& lo, Rational& hi) {
    LinearExpr e;
    lo = hi = Rational(0);
    for (int j = 0; j < inst.eta; ++j) {
      e.add(im.decision[j], a[j]);
      if (a[j].sign() < 0) lo += a[j];
      else hi += a[j];
    }
    return e;
  };

  std::vector<VarId> pbar(inst.v);
  std::vector<std::vector<VarId>> p(inst.v, std::vector<VarId>(inst.S));
  for (int i = 0; i < inst.v; ++i) {
    std::string id = std::to_string(i + 1);
    ScalarFunction f = logistic_function(inst.u[i].to_double());
    std::vector<Rational> avg(inst.eta, Rational(0));
    for (int s = 0; s < inst.S; ++s) {
      std::string sid = id + "_" + std::to_string(s + 1);
      Rational lo, hi;
      LinearExpr e = affine(inst.beta[i][s], lo, hi);
      VarId mu = m.add_variable("mu" + sid, VarKind::Continuous, lo, hi);
      m.add_constraint("mu" + sid, LinearExpr::var(mu), Sense::Eq, e);
      RelaxedValue r = relax_on(m, f, mu, lo, hi, tag, cfg, "p" + sid);
      if (r.art) im.blocks.push_back(*r.art);
      p[i][s] = r.y;
      for (int j = 0; j < inst.eta; ++j) avg[j] += inst.beta[i][s][j];
    }
    for (auto& a : avg) a /= Rational(inst.S);
    Rational lo, hi;
    LinearExpr e = affine(avg, lo, hi);
    VarId mubar = m.add_variable("mubar" + id, VarKind::Continuous, lo, hi);
    m.add_constraint("mubar" + id, LinearExpr::var(mubar), Sense::Eq, e);
    RelaxedValue r = relax_on(m, f, mubar, lo, hi, tag, cfg, "pbar" + id);
    if (r.art) im.blocks.push_back(*r.art);
    pbar[i] = r.y;
  }

  LinearExpr overall;
  for (int i = 0; i < inst.v; ++i) overall.add(pbar[i], inst.shares[i]);
  for (int s = 0; s < inst.S; ++s) {
    LinearExpr lhs;
    for (int i = 0; i < inst.v; ++i) lhs.add(p[i][s], inst.shares[i]);
    m.add_constraint("floor" + std::to_string(s + 1), lhs, Sense::Ge, overall * inst.C);
  }
  m.set_objective(true, overall);
  return im;
}

double kinematics_objective(const KinematicsInstance& inst, const std::vector<double>& theta) {
  double phi = 0.0, x[2] = {0.0, 0.0};
  for (int i = 0; i < inst.n; ++i) {
    phi += theta.at(i);
    double c = std::cos(phi), s = std::sin(phi);
    double v0 = inst.links[i][0].to_double(), v1 = inst.links[i][1].to_double();
    x[0] += c * v0 - s * v1;
    x[1] += s * v0 + c * v1;
  }
  double th = inst.theta_init.to_double() + phi;
  return std::abs(x[0] - inst.x_des[0].to_double()) + std::abs(x[1] - inst.x_des[1].to_double()) +
         inst.beta.to_double() * std::abs(th - inst.theta_des.to_double());
}

std::optional<double> soc_objective(const SocInstance& inst, const std::vector<double>& x) {
  auto logistic = [](double u, double t) { return 1.0 / (1.0 + std::exp(u - t)); };
  std::vector<double> scen(inst.S, 0.0);
  double overall = 0.0;
  for (int i = 0; i < inst.v; ++i) {
    double share = inst.shares[i].to_double(), u = inst.u[i].to_double();
    double mubar = 0.0;
    for (int s = 0; s < inst.S; ++s) {
      double mu = 0.0;
      for (int j = 0; j < inst.eta; ++j) mu += inst.beta[i][s][j].to_double() * x.at(j);
      scen[s] += share * logistic(u, mu);
      mubar += mu;
    }
    overall += share * logistic(u, mubar / inst.S);
  }
  double c = inst.C.to_double();
  for (double v : scen)
    if (v < c * overall) return std::nullopt;
  return overall;
}

std::optional<double> sample_kinematics(const KinematicsInstance& inst, Rng& rng) {
  std::vector<double> theta(inst.n);
  for (int i = 0; i < inst.n; ++i) theta[i] = rng.uniform(inst.lower[i].to_double(), inst.upper[i].to_double());
  return kinematics_objective(inst, theta);
}

std::optional<double> sample_soc(const SocInstance& inst, Rng& rng) {
  std::vector<double> x(inst.eta);
  for (auto& xi : x) xi = rng.uniform();
  return soc_objective(inst, x);
}

}  // namespace pwrelax
