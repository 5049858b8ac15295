#include "pwrelax/formulations.hpp"

#include <algorithm>
#include <set>

namespace pwrelax {

namespace {

std::string family_name(MethodFamily f) {
  switch (f) {
    case MethodFamily::Base: return "base";
    case MethodFamily::Merged: return "merged";
    case MethodFamily::PWR: return "pwr";
    case MethodFamily::GND: return "gnd";
  }
  return "?";
}

// Naming: variables "<block>_<base>" (or "<base>" without a block),
// rows "<block>.<method>.<tag>".
struct Namer {
  std::string block;
  std::string method;
  std::string var(const std::string& base) const { return block.empty() ? base : block + "_" + base; }
  std::string row(const std::string& tag) const { return (block.empty() ? "cdc" : block) + "." + method + "." + tag; }
};

std::string idx(int i) { return std::to_string(i); }

bool is_sos2_method(Method m) {
  return m == Method::CC || m == Method::LogIB || m == Method::LogE || m == Method::ZZB || m == Method::ZZI ||
         m == Method::SOS2native;
}

LinearExpr sum_of(const std::vector<VarId>& vars, const IndexSet& ids) {
  LinearExpr e;
  for (ElementId v : ids) e.add(vars[static_cast<std::size_t>(v - 1)], 1);
  return e;
}

std::vector<VarId> add_lambdas(MilpModel& model, const Namer& n, int count, FormulationArtifacts& art) {
  std::vector<VarId> lam;
  for (int v = 1; v <= count; ++v) lam.push_back(model.add_variable(n.var("lam" + idx(v)), VarKind::Continuous, Rational(0)));
  LinearExpr sum;
  for (VarId l : lam) sum.add(l, 1);
  art.rows.push_back(model.add_constraint(n.row("sum"), sum, Sense::Eq, Rational(1)));
  art.lambda = lam;
  for (VarId l : lam) art.lambda_expr.push_back(LinearExpr::var(l));
  return lam;
}

// Rows sum_L lam <= z and sum_R lam <= 1 - z for each biclique.
void add_cover_rows(MilpModel& model, const Namer& n, const std::vector<VarId>& lam, const BicliqueCover& cover,
                    const std::string& zprefix, FormulationArtifacts& art) {
  for (int j = 1; j <= cover.size(); ++j) {
    const Biclique& b = cover.bicliques[static_cast<std::size_t>(j - 1)];
    VarId z = model.add_variable(n.var(zprefix + idx(j)), VarKind::Binary);
    art.integers.push_back(z);
    if (!b.left.empty())
      art.rows.push_back(model.add_constraint(n.row("L" + zprefix.substr(1) + idx(j)), sum_of(lam, b.left) - LinearExpr::var(z),
                                              Sense::Le, Rational(0)));
    if (!b.right.empty())
      art.rows.push_back(model.add_constraint(n.row("R" + zprefix.substr(1) + idx(j)), sum_of(lam, b.right) + LinearExpr::var(z),
                                              Sense::Le, Rational(1)));
  }
}

// Code word of segment i (1-based) with the clamping K^0 = K^1, K^{d+1} = K^d.
template <class Rows>
const auto& clamped(const Rows& rows, int i, int d) {
  return rows[static_cast<std::size_t>(std::clamp(i, 1, d) - 1)];
}

// Binary/integer part of the SOS2 methods acting on lam_1..lam_{d+1}.
void add_sos2_method_rows(MilpModel& model, const Namer& n, const std::vector<VarId>& lam, int d, Method method,
                          FormulationArtifacts& art) {
  const int r = ceil_log2(d);
  switch (method) {
    case Method::SOS2native: {
      std::vector<Rational> w;
      for (int v = 1; v <= d + 1; ++v) w.emplace_back(v);
      model.add_sos2(n.row("sos2"), lam, w);
      return;
    }
    case Method::CC: {
      std::vector<VarId> z;
      for (int i = 1; i <= d; ++i) z.push_back(model.add_variable(n.var("z" + idx(i)), VarKind::Binary));
      art.integers = z;
      for (int v = 1; v <= d + 1; ++v) {
        LinearExpr rhs;
        if (v >= 2) rhs.add(z[static_cast<std::size_t>(v - 2)], 1);
        if (v <= d) rhs.add(z[static_cast<std::size_t>(v - 1)], 1);
        art.rows.push_back(model.add_constraint(n.row("adj" + idx(v)), LinearExpr::var(lam[static_cast<std::size_t>(v - 1)]), Sense::Le, rhs));
      }
      LinearExpr sz;
      for (VarId zi : z) sz.add(zi, 1);
      art.rows.push_back(model.add_constraint(n.row("one"), sz, Sense::Eq, Rational(1)));
      return;
    }
    case Method::LogIB:
    case Method::LogE: {
      if (r == 0) return;
      GrayCode K = brgc_prefix(d);
      for (int j = 1; j <= r; ++j) {
        VarId z = model.add_variable(n.var("z" + idx(j)), VarKind::Binary);
        art.integers.push_back(z);
        LinearExpr lo, hi;
        IndexSet L, R;
        for (int v = 1; v <= d + 1; ++v) {
          int a = clamped(K.words(), v - 1, d)[static_cast<std::size_t>(j - 1)];
          int b = clamped(K.words(), v, d)[static_cast<std::size_t>(j - 1)];
          if (std::min(a, b) == 1) {
            lo.add(lam[static_cast<std::size_t>(v - 1)], 1);
            L.push_back(v);
          }
          if (std::max(a, b) == 1) hi.add(lam[static_cast<std::size_t>(v - 1)], 1);
          if (a == 0 && b == 0) R.push_back(v);
        }
        if (method == Method::LogE) {
          art.rows.push_back(model.add_constraint(n.row("lo" + idx(j)), lo, Sense::Le, LinearExpr::var(z)));
          art.rows.push_back(model.add_constraint(n.row("hi" + idx(j)), LinearExpr::var(z), Sense::Le, hi));
        } else {
          if (!L.empty())
            art.rows.push_back(model.add_constraint(n.row("L" + idx(j)), sum_of(lam, L) - LinearExpr::var(z), Sense::Le, Rational(0)));
          if (!R.empty())
            art.rows.push_back(model.add_constraint(n.row("R" + idx(j)), sum_of(lam, R) + LinearExpr::var(z), Sense::Le, Rational(1)));
        }
      }
      return;
    }
    case Method::ZZI:
    case Method::ZZB: {
      if (r == 0) return;
      ZigzagCode zz = zigzag_code(r);
      std::vector<std::vector<int>> C(zz.rows.begin(), zz.rows.begin() + d);
      // the binary variant needs the fastest-changing coordinate first
      if (method == Method::ZZB)
        for (auto& row : C) std::reverse(row.begin(), row.end());
      std::vector<VarId> z;
      for (int k = 1; k <= r; ++k) {
        if (method == Method::ZZI) {
          int cmax = 0;
          for (const auto& row : C) cmax = std::max(cmax, row[static_cast<std::size_t>(k - 1)]);
          z.push_back(model.add_variable(n.var("z" + idx(k)), VarKind::Integer, Rational(0), Rational(cmax)));
        } else {
          z.push_back(model.add_variable(n.var("z" + idx(k)), VarKind::Binary));
        }
      }
      art.integers = z;
      for (int k = 1; k <= r; ++k) {
        LinearExpr lo, hi, mid;
        for (int v = 1; v <= d + 1; ++v) {
          lo.add(lam[static_cast<std::size_t>(v - 1)], clamped(C, v - 1, d)[static_cast<std::size_t>(k - 1)]);
          hi.add(lam[static_cast<std::size_t>(v - 1)], clamped(C, v, d)[static_cast<std::size_t>(k - 1)]);
        }
        mid.add(z[static_cast<std::size_t>(k - 1)], 1);
        if (method == Method::ZZB)
          for (int l = k + 1; l <= r; ++l) mid.add(z[static_cast<std::size_t>(l - 1)], Rational(1LL << (l - k - 1)));
        art.rows.push_back(model.add_constraint(n.row("lo" + idx(k)), lo, Sense::Le, mid));
        art.rows.push_back(model.add_constraint(n.row("hi" + idx(k)), mid, Sense::Le, hi));
      }
      return;
    }
    default:
      throw UsageError("method " + method_name(method) + " is not an SOS2 method");
  }
}

// Shared core of the univariate formulations: input x and outputs y[k] with
// values ys[k][v] at breakpoint xs[v].
FormulationArtifacts pwl_core(MilpModel& model, const std::vector<Rational>& xs, const std::vector<std::vector<Rational>>& ys,
                              Method method, const Namer& n, std::optional<VarId> xin) {
  const int d = static_cast<int>(xs.size()) - 1;
  if (d < 1) throw UsageError("need at least two breakpoints");
  FormulationArtifacts art;
  VarId x = xin ? *xin : model.add_variable(n.var("x"), VarKind::Continuous, xs.front(), xs.back());
  art.x = x;
  for (std::size_t k = 0; k < ys.size(); ++k)
    art.y.push_back(model.add_variable(n.var(ys.size() == 1 ? "y" : "y" + idx(static_cast<int>(k) + 1)), VarKind::Continuous, std::nullopt));
  auto out_row = [&](const std::string& tag, VarId lhs, const LinearExpr& rhs) {
    art.rows.push_back(model.add_constraint(n.row(tag), LinearExpr::var(lhs), Sense::Eq, rhs));
  };
  auto y_tag = [&](std::size_t k) { return ys.size() == 1 ? std::string("y") : "y" + idx(static_cast<int>(k) + 1); };

  if (is_sos2_method(method)) {
    std::vector<VarId> lam = add_lambdas(model, n, d + 1, art);
    LinearExpr ex;
    for (int v = 0; v <= d; ++v) ex.add(lam[static_cast<std::size_t>(v)], xs[static_cast<std::size_t>(v)]);
    out_row("x", x, ex);
    for (std::size_t k = 0; k < ys.size(); ++k) {
      LinearExpr ey;
      for (int v = 0; v <= d; ++v) ey.add(lam[static_cast<std::size_t>(v)], ys[k][static_cast<std::size_t>(v)]);
      out_row(y_tag(k), art.y[k], ey);
    }
    add_sos2_method_rows(model, n, lam, d, method, art);
    return art;
  }

  if (method == Method::Inc) {
    std::vector<VarId> delta, z;
    for (int i = 1; i <= d + 1; ++i) delta.push_back(model.add_variable(n.var("delta" + idx(i)), VarKind::Continuous, Rational(0), Rational(1)));
    for (int i = 1; i <= d; ++i) z.push_back(model.add_variable(n.var("z" + idx(i)), VarKind::Binary));
    art.aux = delta;
    art.integers = z;
    LinearExpr ex(xs[0]);
    for (int i = 0; i < d; ++i) ex.add(delta[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(i + 1)] - xs[static_cast<std::size_t>(i)]);
    out_row("x", x, ex);
    for (std::size_t k = 0; k < ys.size(); ++k) {
      LinearExpr ey(ys[k][0]);
      for (int i = 0; i < d; ++i) ey.add(delta[static_cast<std::size_t>(i)], ys[k][static_cast<std::size_t>(i + 1)] - ys[k][static_cast<std::size_t>(i)]);
      out_row(y_tag(k), art.y[k], ey);
    }
    for (int i = 1; i <= d; ++i) {
      auto ui = static_cast<std::size_t>(i);
      art.rows.push_back(model.add_constraint(n.row("next" + idx(i)), LinearExpr::var(delta[ui]), Sense::Le, LinearExpr::var(z[ui - 1])));
      art.rows.push_back(model.add_constraint(n.row("prev" + idx(i)), LinearExpr::var(z[ui - 1]), Sense::Le, LinearExpr::var(delta[ui - 1])));
    }
    art.lambda_expr.push_back(LinearExpr(Rational(1)) - LinearExpr::var(delta[0]));
    for (int v = 2; v <= d; ++v)
      art.lambda_expr.push_back(LinearExpr::var(delta[static_cast<std::size_t>(v - 2)]) - LinearExpr::var(delta[static_cast<std::size_t>(v - 1)]));
    art.lambda_expr.push_back(LinearExpr::var(delta[static_cast<std::size_t>(d - 1)]));
    return art;
  }

  if (method == Method::MC) {
    std::vector<VarId> z, xc;
    std::vector<std::vector<VarId>> yc(ys.size());
    art.lambda_expr.assign(static_cast<std::size_t>(d + 1), LinearExpr());
    LinearExpr sum_x, sum_z;
    std::vector<LinearExpr> sum_y(ys.size());
    for (int i = 1; i <= d; ++i) {
      auto ui = static_cast<std::size_t>(i);
      const Rational &xa = xs[ui - 1], &xb = xs[ui];
      VarId zi = model.add_variable(n.var("z" + idx(i)), VarKind::Binary);
      VarId xi = model.add_variable(n.var("xc" + idx(i)), VarKind::Continuous, std::nullopt);
      z.push_back(zi);
      xc.push_back(xi);
      art.aux.push_back(xi);
      art.rows.push_back(model.add_constraint(n.row("xlo" + idx(i)), LinearExpr::var(xi), Sense::Ge, LinearExpr::var(zi, xa)));
      art.rows.push_back(model.add_constraint(n.row("xhi" + idx(i)), LinearExpr::var(xi), Sense::Le, LinearExpr::var(zi, xb)));
      for (std::size_t k = 0; k < ys.size(); ++k) {
        const Rational &ya = ys[k][ui - 1], &yb = ys[k][ui];
        Rational slope = (yb - ya) / (xb - xa);
        VarId yi = model.add_variable(n.var((ys.size() == 1 ? std::string("yc") : "yc" + idx(static_cast<int>(k) + 1) + "_") + idx(i)),
                                      VarKind::Continuous, std::nullopt);
        yc[k].push_back(yi);
        art.aux.push_back(yi);
        LinearExpr rhs = LinearExpr::var(zi, ya) + LinearExpr::var(xi, slope) - LinearExpr::var(zi, slope * xa);
        art.rows.push_back(model.add_constraint(n.row((ys.size() == 1 ? std::string("yc") : "yc" + idx(static_cast<int>(k) + 1) + "_") + idx(i)),
                                                LinearExpr::var(yi), Sense::Eq, rhs));
        sum_y[k].add(yi, 1);
      }
      sum_x.add(xi, 1);
      sum_z.add(zi, 1);
      // lambda recovery: w = (xc - xa z) / (xb - xa)
      Rational inv = Rational(1) / (xb - xa);
      LinearExpr w = LinearExpr::var(xi, inv) - LinearExpr::var(zi, xa * inv);
      art.lambda_expr[ui - 1] += LinearExpr::var(zi) - w;
      art.lambda_expr[ui] += w;
    }
    for (auto& e : art.lambda_expr) e.normalize();
    art.integers = z;
    out_row("x", x, sum_x);
    for (std::size_t k = 0; k < ys.size(); ++k) out_row(y_tag(k), art.y[k], sum_y[k]);
    art.rows.push_back(model.add_constraint(n.row("one"), sum_z, Sense::Eq, Rational(1)));
    return art;
  }

  if (method == Method::DLog) {
    // g[i][0] = weight of breakpoint i in segment i, g[i][1] = weight of breakpoint i+1
    std::vector<std::array<VarId, 2>> g;
    LinearExpr total, ex;
    std::vector<LinearExpr> ey(ys.size());
    for (int i = 1; i <= d; ++i) {
      auto ui = static_cast<std::size_t>(i);
      VarId a = model.add_variable(n.var("gam" + idx(i) + "_" + idx(i)), VarKind::Continuous, Rational(0));
      VarId b = model.add_variable(n.var("gam" + idx(i) + "_" + idx(i + 1)), VarKind::Continuous, Rational(0));
      g.push_back({a, b});
      art.aux.push_back(a);
      art.aux.push_back(b);
      total.add(a, 1).add(b, 1);
      ex.add(a, xs[ui - 1]).add(b, xs[ui]);
      for (std::size_t k = 0; k < ys.size(); ++k) ey[k].add(a, ys[k][ui - 1]).add(b, ys[k][ui]);
    }
    art.rows.push_back(model.add_constraint(n.row("sum"), total, Sense::Eq, Rational(1)));
    out_row("x", x, ex);
    for (std::size_t k = 0; k < ys.size(); ++k) out_row(y_tag(k), art.y[k], ey[k]);
    const int r = ceil_log2(d);
    if (r > 0) {
      GrayCode h = brgc_prefix(d);
      for (int j = 1; j <= r; ++j) {
        VarId z = model.add_variable(n.var("z" + idx(j)), VarKind::Binary);
        art.integers.push_back(z);
        LinearExpr lhs;
        for (int i = 1; i <= d; ++i)
          if (h.bit(i - 1, j - 1)) lhs.add(g[static_cast<std::size_t>(i - 1)][0], 1).add(g[static_cast<std::size_t>(i - 1)][1], 1);
        art.rows.push_back(model.add_constraint(n.row("code" + idx(j)), lhs, Sense::Eq, LinearExpr::var(z)));
      }
    }
    for (int v = 1; v <= d + 1; ++v) {
      LinearExpr e;
      if (v >= 2) e.add(g[static_cast<std::size_t>(v - 2)][1], 1);
      if (v <= d) e.add(g[static_cast<std::size_t>(v - 1)][0], 1);
      art.lambda_expr.push_back(e);
    }
    return art;
  }
  throw UsageError("method " + method_name(method) + " is not a univariate formulation");
}

GrayCode code_for(const CdcFamily& fam, CodeKind kind, const std::optional<GrayCode>& given) {
  if (given) return *given;
  return kind == CodeKind::Brgc ? brgc_prefix(fam.size()) : balanced_gray(fam.size());
}

EdgeRanking ranking_for(const CdcFamily& fam, const std::optional<EdgeRanking>& given) {
  if (given) return *given;
  return balanced_ranking(fam.size());
}

std::string pwr_method_name(const PwrEncoding& enc) {
  if (enc.method == Method::Gray) return enc.code_kind == CodeKind::Brgc && !enc.code ? "brgc" : "gray";
  return method_name(enc.method);
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Inc: return "inc";
    case Method::MC: return "mc";
    case Method::CC: return "cc";
    case Method::DLog: return "dlog";
    case Method::LogIB: return "logib";
    case Method::LogE: return "loge";
    case Method::ZZB: return "zzb";
    case Method::ZZI: return "zzi";
    case Method::SOS2native: return "sos2";
    case Method::Gray: return "gray";
    case Method::Biclique: return "biclique";
  }
  return "?";
}

std::string MethodTag::str() const {
  std::string m = method_name(method);
  if (method == Method::Gray && family == MethodFamily::PWR) m = code == CodeKind::Brgc ? "brgc" : "balanced";
  return family_name(family) + "-" + m;
}

MethodTag MethodTag::parse(const std::string& text) {
  for (const MethodTag& t : method_roster())
    if (t.str() == text) return t;
  throw UsageError("unknown method '" + text + "'");
}

std::vector<MethodTag> method_roster() {
  std::vector<MethodTag> r;
  for (Method m : {Method::Inc, Method::CC, Method::MC, Method::DLog, Method::LogIB, Method::LogE, Method::ZZB, Method::ZZI})
    r.push_back({MethodFamily::Base, m, CodeKind::Balanced});
  for (Method m : {Method::Inc, Method::DLog, Method::LogE, Method::SOS2native, Method::ZZB, Method::ZZI})
    r.push_back({MethodFamily::Merged, m, CodeKind::Balanced});
  r.push_back({MethodFamily::PWR, Method::Inc, CodeKind::Balanced});
  r.push_back({MethodFamily::PWR, Method::DLog, CodeKind::Balanced});
  r.push_back({MethodFamily::PWR, Method::Gray, CodeKind::Brgc});
  r.push_back({MethodFamily::PWR, Method::Gray, CodeKind::Balanced});
  r.push_back({MethodFamily::PWR, Method::Biclique, CodeKind::Balanced});
  r.push_back({MethodFamily::GND, Method::Gray, CodeKind::Balanced});
  r.push_back({MethodFamily::GND, Method::Biclique, CodeKind::Balanced});
  return r;
}

void validate(const MethodTag& tag) {
  for (const MethodTag& t : method_roster()) {
    bool code_matters = t.method == Method::Gray && t.family == MethodFamily::PWR;
    if (t.family == tag.family && t.method == tag.method && (!code_matters || t.code == tag.code)) return;
  }
  throw UsageError("unsupported method combination " + family_name(tag.family) + "/" + method_name(tag.method));
}

int expected_integer_count(const MethodTag& tag, int d) {
  switch (tag.method) {
    case Method::Inc: return tag.family == MethodFamily::PWR ? d - 1 : d;
    case Method::MC:
    case Method::CC: return d;
    case Method::SOS2native: return 0;
    default: return ceil_log2(d);
  }
}

FormulationArtifacts sos2_formulation(MilpModel& model, int d, Method method, const std::string& block) {
  if (d < 1) throw UsageError("SOS2 needs d >= 1");
  if (!is_sos2_method(method)) throw UsageError("method " + method_name(method) + " is not an SOS2 method");
  Namer n{block, method_name(method)};
  FormulationArtifacts art;
  art.tag = {MethodFamily::Base, method, CodeKind::Balanced};
  std::vector<VarId> lam = add_lambdas(model, n, d + 1, art);
  add_sos2_method_rows(model, n, lam, d, method, art);
  return art;
}

FormulationArtifacts pwl_formulation(MilpModel& model, const Breakpoints& bp, Method method, const std::string& block,
                                     std::optional<VarId> x) {
  validate_breakpoints(bp);
  Namer n{block, method_name(method)};
  FormulationArtifacts art = pwl_core(model, bp.x, {bp.y}, method, n, x);
  art.tag = {MethodFamily::Base, method, CodeKind::Balanced};
  return art;
}

FormulationArtifacts merged_formulation(MilpModel& model, const std::vector<Breakpoints>& functions, Method method,
                                        const std::string& block, std::optional<VarId> x) {
  if (functions.empty()) throw UsageError("merged formulation needs at least one function");
  std::set<Rational> xs_set;
  for (const auto& f : functions) {
    validate_breakpoints(f);
    if (f.x.front() != functions[0].x.front() || f.x.back() != functions[0].x.back())
      throw UsageError("merged functions must share their domain");
    xs_set.insert(f.x.begin(), f.x.end());
  }
  std::vector<Rational> xs(xs_set.begin(), xs_set.end());
  std::vector<std::vector<Rational>> ys;
  for (const auto& f : functions) {
    std::vector<Rational> y;
    for (const auto& xv : xs) y.push_back(pwl_eval(f, xv));
    ys.push_back(std::move(y));
  }
  Namer n{block, method_name(method)};
  FormulationArtifacts art = pwl_core(model, xs, ys, method, n, x);
  art.tag = {MethodFamily::Merged, method, CodeKind::Balanced};
  return art;
}

FormulationArtifacts cdc_formulation(MilpModel& model, const CdcFamily& fam, const PwrEncoding& enc, const std::string& block) {
  if (fam.shape() && fam.shape()->size() != 1) throw UsageError("cdc_formulation expects a one-dimensional family");
  if (!check_g1d(fam)) throw StructureError("family is not g1d");
  Namer n{block, pwr_method_name(enc)};
  FormulationArtifacts art;
  art.tag = {MethodFamily::PWR, enc.method, enc.code_kind};
  const int d = fam.size();
  switch (enc.method) {
    case Method::Gray: {
      std::vector<VarId> lam = add_lambdas(model, n, fam.ground_size(), art);
      add_cover_rows(model, n, lam, gray_cover(fam, code_for(fam, enc.code_kind, enc.code)), "z", art);
      return art;
    }
    case Method::Biclique: {
      std::vector<VarId> lam = add_lambdas(model, n, fam.ground_size(), art);
      add_cover_rows(model, n, lam, merge_cover(fam, ranking_for(fam, enc.ranking)), "z", art);
      return art;
    }
    case Method::Inc:
    case Method::DLog: {
      std::vector<VarId> lam;
      for (int v = 1; v <= fam.ground_size(); ++v)
        lam.push_back(model.add_variable(n.var("lam" + idx(v)), VarKind::Continuous, Rational(0)));
      art.lambda = lam;
      for (VarId l : lam) art.lambda_expr.push_back(LinearExpr::var(l));
      std::vector<LinearExpr> lam_sum(static_cast<std::size_t>(fam.ground_size()));
      std::vector<VarId> z;
      for (int i = 1; i <= d; ++i) {
        VarId zi = model.add_variable(n.var("w" + idx(i)), VarKind::Continuous, Rational(0), Rational(1));
        z.push_back(zi);
        art.aux.push_back(zi);
        LinearExpr piece;
        for (ElementId v : fam.set(i - 1)) {
          VarId g = model.add_variable(n.var("gam" + idx(i) + "_" + idx(v)), VarKind::Continuous, Rational(0), Rational(1));
          art.aux.push_back(g);
          piece.add(g, 1);
          lam_sum[static_cast<std::size_t>(v - 1)].add(g, 1);
        }
        art.rows.push_back(model.add_constraint(n.row("piece" + idx(i)), piece, Sense::Eq, LinearExpr::var(zi)));
      }
      for (int v = 1; v <= fam.ground_size(); ++v)
        art.rows.push_back(model.add_constraint(n.row("lam" + idx(v)), LinearExpr::var(lam[static_cast<std::size_t>(v - 1)]), Sense::Eq,
                                                lam_sum[static_cast<std::size_t>(v - 1)]));
      if (enc.method == Method::Inc) {
        std::vector<VarId> u;
        for (int i = 1; i < d; ++i) u.push_back(model.add_variable(n.var("u" + idx(i)), VarKind::Binary));
        art.integers = u;
        if (d == 1) {
          art.rows.push_back(model.add_constraint(n.row("first"), LinearExpr::var(z[0]), Sense::Eq, Rational(1)));
          return art;
        }
        for (int i = 1; i + 1 < d; ++i) {
          auto ui = static_cast<std::size_t>(i);
          art.rows.push_back(model.add_constraint(n.row("order" + idx(i)), LinearExpr::var(u[ui - 1]), Sense::Ge, LinearExpr::var(u[ui])));
          art.rows.push_back(model.add_constraint(n.row("step" + idx(i)), LinearExpr::var(z[ui]), Sense::Eq,
                                                  LinearExpr::var(u[ui - 1]) - LinearExpr::var(u[ui])));
        }
        art.rows.push_back(model.add_constraint(n.row("first"), LinearExpr::var(z[0]), Sense::Eq, LinearExpr(Rational(1)) - LinearExpr::var(u[0])));
        art.rows.push_back(model.add_constraint(n.row("last"), LinearExpr::var(z[static_cast<std::size_t>(d - 1)]), Sense::Eq,
                                                LinearExpr::var(u[static_cast<std::size_t>(d - 2)])));
        return art;
      }
      // DLog: pieces with the same code bit share a side
      LinearExpr sz;
      for (VarId zi : z) sz.add(zi, 1);
      art.rows.push_back(model.add_constraint(n.row("one"), sz, Sense::Eq, Rational(1)));
      const int r = ceil_log2(d);
      if (r == 0) return art;
      GrayCode h = brgc_prefix(d);
      for (int j = 1; j <= r; ++j) {
        VarId u = model.add_variable(n.var("u" + idx(j)), VarKind::Binary);
        art.integers.push_back(u);
        LinearExpr zero_side, one_side;
        for (int i = 1; i <= d; ++i) (h.bit(i - 1, j - 1) ? one_side : zero_side).add(z[static_cast<std::size_t>(i - 1)], 1);
        art.rows.push_back(model.add_constraint(n.row("off" + idx(j)), zero_side, Sense::Le, LinearExpr::var(u)));
        art.rows.push_back(model.add_constraint(n.row("on" + idx(j)), one_side, Sense::Le, LinearExpr(Rational(1)) - LinearExpr::var(u)));
      }
      return art;
    }
    default:
      throw UsageError("method " + method_name(enc.method) + " is not a CDC encoding");
  }
}

FormulationArtifacts gnd_formulation(MilpModel& model, const CdcFamily& fam, const std::vector<AxisEncoding>& axes,
                                     const std::string& block) {
  if (!check_gnd(fam)) throw StructureError("family is not gnd");
  std::vector<CdcFamily> proj = axis_projections(fam);
  if (axes.size() != proj.size()) throw UsageError("one encoding per axis is required");
  Namer n{block, "gnd"};
  FormulationArtifacts art;
  art.tag = {MethodFamily::GND, axes.empty() ? Method::Gray : axes[0].method, CodeKind::Balanced};
  std::vector<VarId> lam = add_lambdas(model, n, fam.ground_size(), art);
  for (std::size_t a = 0; a < proj.size(); ++a) {
    const AxisEncoding& enc = axes[a];
    BicliqueCover cover;
    if (enc.method == Method::Gray)
      cover = gray_cover(proj[a], enc.code ? *enc.code : balanced_gray(proj[a].size()));
    else if (enc.method == Method::Biclique)
      cover = merge_cover(proj[a], enc.ranking ? *enc.ranking : balanced_ranking(proj[a].size()));
    else
      throw UsageError("axis encodings must be Gray or Biclique");
    add_cover_rows(model, n, lam, cover, "z" + idx(static_cast<int>(a) + 1) + "_", art);
  }
  return art;
}

FormulationArtifacts pwr_attach(MilpModel& model, const Relaxation1D& relax, const PwrEncoding& enc, const std::string& block,
                                std::optional<VarId> x) {
  FormulationArtifacts art = cdc_formulation(model, relax.family, enc, block);
  Namer n{block, pwr_method_name(enc)};
  VarId xv = x ? *x : model.add_variable(n.var("x"), VarKind::Continuous, relax.lo, relax.hi);
  VarId yv = model.add_variable(n.var("y"), VarKind::Continuous, std::nullopt);
  LinearExpr ex, ey;
  for (std::size_t v = 0; v < relax.vertices.size(); ++v) {
    ex.add(art.lambda[v], relax.vertices[v].x);
    ey.add(art.lambda[v], relax.vertices[v].y);
  }
  art.rows.push_back(model.add_constraint(n.row("x"), LinearExpr::var(xv), Sense::Eq, ex));
  art.rows.push_back(model.add_constraint(n.row("y"), LinearExpr::var(yv), Sense::Eq, ey));
  art.x = xv;
  art.y = {yv};
  return art;
}

FormulationArtifacts attach_relaxation(MilpModel& model, const Relaxation1D& relax, const MethodTag& tag,
                                       const std::string& block_in, std::optional<VarId> x) {
  validate(tag);
  const std::string block = block_in.empty() ? std::string("f") : block_in;
  switch (tag.family) {
    case MethodFamily::PWR: {
      PwrEncoding enc;
      enc.method = tag.method;
      enc.code_kind = tag.code;
      return pwr_attach(model, relax, enc, block, x);
    }
    case MethodFamily::Base: {
      VarId xv = x ? *x : model.add_variable(block + "_x", VarKind::Continuous, relax.lo, relax.hi);
      FormulationArtifacts lo = pwl_formulation(model, relax.lower, tag.method, block + "_lo", xv);
      FormulationArtifacts hi = pwl_formulation(model, relax.upper, tag.method, block + "_up", xv);
      VarId yv = model.add_variable(block + "_y", VarKind::Continuous, std::nullopt);
      FormulationArtifacts art;
      art.tag = tag;
      art.x = xv;
      art.y = {yv};
      art.rows.push_back(model.add_constraint(block + ".base.ylo", LinearExpr::var(yv), Sense::Ge, LinearExpr::var(lo.y[0])));
      art.rows.push_back(model.add_constraint(block + ".base.yup", LinearExpr::var(yv), Sense::Le, LinearExpr::var(hi.y[0])));
      for (const auto* part : {&lo, &hi}) {
        art.integers.insert(art.integers.end(), part->integers.begin(), part->integers.end());
        art.rows.insert(art.rows.end(), part->rows.begin(), part->rows.end());
      }
      return art;
    }
    case MethodFamily::Merged: {
      VarId xv = x ? *x : model.add_variable(block + "_x", VarKind::Continuous, relax.lo, relax.hi);
      FormulationArtifacts art = merged_formulation(model, {relax.lower, relax.upper}, tag.method, block, xv);
      VarId yv = model.add_variable(block + "_y", VarKind::Continuous, std::nullopt);
      art.rows.push_back(model.add_constraint(block + ".merged.ylo", LinearExpr::var(yv), Sense::Ge, LinearExpr::var(art.y[0])));
      art.rows.push_back(model.add_constraint(block + ".merged.yup", LinearExpr::var(yv), Sense::Le, LinearExpr::var(art.y[1])));
      art.y = {yv};
      return art;
    }
    case MethodFamily::GND:
      throw UsageError("grid methods do not apply to univariate relaxations");
  }
  throw UsageError("unknown method family");
}

}  // namespace pwrelax
