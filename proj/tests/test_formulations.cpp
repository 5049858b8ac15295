#include <doctest.h>

#include <numbers>
#include <set>

#include "pwrelax/formulations.hpp"
#include "pwrelax/milp.hpp"
#include "pwrelax/random.hpp"

using namespace pwrelax;

namespace {

Breakpoints random_bp(Rng& rng, int d) {
  Breakpoints bp;
  Rational x(-1);
  for (int k = 0; k <= d; ++k) {
    bp.x.push_back(x);
    bp.y.emplace_back(rng.integer(-6, 6));
    x += Rational(rng.integer(1, 3), 2);
  }
  return bp;
}

// Optimum of +-y[k] with x fixed at t.
Rational fixed_x_value(MilpModel m, const FormulationArtifacts& art, std::size_t k, const Rational& t, bool maximize) {
  m.add_constraint("fix", LinearExpr::var(*art.x), Sense::Eq, t);
  m.set_objective(maximize, LinearExpr::var(art.y[k]));
  MipSolution s = mip_solve(m);
  REQUIRE(s.status == MipStatus::Optimal);
  return *s.primal;
}

}  // namespace

TEST_CASE("method tags") {
  for (const MethodTag& t : method_roster()) {
    CHECK(MethodTag::parse(t.str()) == t);
    CHECK_NOTHROW(validate(t));
  }
  CHECK(MethodTag::parse("pwr-biclique").str() == "pwr-biclique");
  CHECK(MethodTag::parse("base-loge").method == Method::LogE);
  CHECK_THROWS_AS(MethodTag::parse("pwr-cc"), UsageError);
  CHECK_THROWS_AS(validate({MethodFamily::PWR, Method::CC, CodeKind::Balanced}), UsageError);
  CHECK_THROWS_AS(validate({MethodFamily::Merged, Method::MC, CodeKind::Balanced}), UsageError);
}

TEST_CASE("integer counts of the SOS2 methods") {
  for (int d = 1; d <= 9; ++d) {
    for (Method m : {Method::CC, Method::LogIB, Method::LogE, Method::ZZB, Method::ZZI, Method::SOS2native}) {
      MilpModel model;
      FormulationArtifacts art = sos2_formulation(model, d, m);
      CHECK(art.lambda.size() == static_cast<std::size_t>(d + 1));
      CHECK(static_cast<int>(art.integers.size()) == expected_integer_count({MethodFamily::Base, m, CodeKind::Balanced}, d));
    }
  }
  MilpModel cc;
  sos2_formulation(cc, 4, Method::CC);
  CHECK(cc.integer_variables().size() == 4);
  CHECK(cc.num_variables() == 9);
  MilpModel zz;
  FormulationArtifacts zart = sos2_formulation(zz, 4, Method::ZZI);
  // zigzag rows 00, 01, 11, 12
  CHECK(zz.variable(zart.integers[0]).upper == Rational(1));
  CHECK(zz.variable(zart.integers[1]).upper == Rational(2));
}

TEST_CASE("counts for the other univariate methods") {
  Rng rng(4);
  Breakpoints bp = random_bp(rng, 4);
  MilpModel dlog;
  CHECK(pwl_formulation(dlog, bp, Method::DLog).integers.size() == 2);
  MilpModel mc;
  FormulationArtifacts a = pwl_formulation(mc, bp, Method::MC);
  CHECK(a.integers.size() == 4);
  CHECK(a.aux.size() >= 4);
  MilpModel inc;
  CHECK(pwl_formulation(inc, random_bp(rng, 1), Method::Inc).integers.size() == 1);
  CHECK_THROWS(sos2_formulation(inc, 3, Method::Inc));
}

TEST_CASE("property: every univariate method reproduces the function at fixed x") {
  Rng rng(12);
  for (Method m : {Method::Inc, Method::MC, Method::CC, Method::DLog, Method::LogIB, Method::LogE, Method::ZZB, Method::ZZI,
                   Method::SOS2native}) {
    for (int t = 0; t < 6; ++t) {
      const int d = static_cast<int>(rng.integer(1, 6));
      Breakpoints bp = random_bp(rng, d);
      MilpModel model;
      FormulationArtifacts art = pwl_formulation(model, bp, m, "g");
      for (int s = 0; s < 3; ++s) {
        // dyadic points in the domain, including breakpoints
        Rational x = bp.x.front() + (bp.x.back() - bp.x.front()) * Rational(rng.integer(0, 8), 8);
        Rational want = pwl_eval(bp, x);
        CHECK(fixed_x_value(model, art, 0, x, false) == want);
        CHECK(fixed_x_value(model, art, 0, x, true) == want);
      }
    }
  }
}

TEST_CASE("property: merged formulations reproduce each function") {
  Rng rng(21);
  for (Method m : {Method::Inc, Method::DLog, Method::LogE, Method::SOS2native, Method::ZZB, Method::ZZI}) {
    for (int t = 0; t < 4; ++t) {
      Breakpoints f = random_bp(rng, static_cast<int>(rng.integer(1, 4)));
      Breakpoints g{{f.x.front(), f.x.front() + (f.x.back() - f.x.front()) * Rational(1, 3), f.x.back()},
                    {Rational(rng.integer(-3, 3)), Rational(rng.integer(-3, 3)), Rational(rng.integer(-3, 3))}};
      MilpModel model;
      FormulationArtifacts art = merged_formulation(model, {f, g}, m, "mg");
      REQUIRE(art.y.size() == 2);
      Rational x = f.x.front() + (f.x.back() - f.x.front()) * Rational(rng.integer(0, 12), 12);
      CHECK(fixed_x_value(model, art, 0, x, false) == pwl_eval(f, x));
      CHECK(fixed_x_value(model, art, 0, x, true) == pwl_eval(f, x));
      CHECK(fixed_x_value(model, art, 1, x, false) == pwl_eval(g, x));
      CHECK(fixed_x_value(model, art, 1, x, true) == pwl_eval(g, x));
    }
  }
  MilpModel bad;
  Breakpoints a{{Rational(0), Rational(1)}, {Rational(0), Rational(0)}}, b{{Rational(0), Rational(2)}, {Rational(0), Rational(0)}};
  CHECK_THROWS_AS(merged_formulation(bad, {a, b}, Method::LogE), UsageError);
}

TEST_CASE("cdc formulations of a g1d family") {
  std::vector<IndexSet> sets;
  for (int i = 0; i < 6; ++i) sets.push_back({2 * i + 1, 2 * i + 2, 2 * i + 3});
  CdcFamily fam(sets);
  for (Method m : {Method::Gray, Method::Biclique}) {
    MilpModel model;
    PwrEncoding enc;
    enc.method = m;
    FormulationArtifacts art = cdc_formulation(model, fam, enc);
    CHECK(art.integers.size() == 3);
    CHECK(art.lambda.size() == 13);
  }
  MilpModel inc, dlog;
  CHECK(cdc_formulation(inc, fam, {Method::Inc}).integers.size() == 5);
  CHECK(cdc_formulation(dlog, fam, {Method::DLog}).integers.size() == 3);
  MilpModel bad;
  CHECK_THROWS(cdc_formulation(bad, CdcFamily({{1, 2}, {2, 3}, {1, 3}}), {Method::Gray}));
}

TEST_CASE("gnd formulations") {
  CdcFamily square({{1, 2}, {1, 4}, {2, 3}, {3, 4}}, std::vector<int>{2, 2});
  MilpModel m;
  FormulationArtifacts art = gnd_formulation(m, square, {{Method::Gray}, {Method::Gray}});
  CHECK(art.integers.size() == 2);
  std::vector<Rational> bp = {Rational(0), Rational(1), Rational(2), Rational(3), Rational(4)};
  McCormickGrid g = mccormick_grid(bp, bp);
  for (Method method : {Method::Gray, Method::Biclique}) {
    MilpModel mm;
    CHECK(gnd_formulation(mm, g.family, {{method}, {method}}).integers.size() == 4);
  }
  MilpModel wrong;
  CHECK_THROWS_AS(gnd_formulation(wrong, square, {{Method::Gray}}), UsageError);
  // a one-axis grid family gives the same rows as the univariate Gray form
  CdcFamily line({{1, 2, 3}, {3, 4, 5}, {5, 6, 7}}, std::vector<int>{3});
  MilpModel a, b;
  gnd_formulation(a, line, {{Method::Gray}});
  PwrEncoding enc;
  enc.method = Method::Gray;
  cdc_formulation(b, CdcFamily(line.sets()), enc);
  CHECK(a.num_variables() == b.num_variables());
  CHECK(a.num_constraints() == b.num_constraints());
}

TEST_CASE("relaxation attachment") {
  Relaxation1D one = build_relaxation(function_by_name("exp"), 0.0, 1.0, {2, 1, 12});
  for (const char* tag : {"pwr-biclique", "pwr-inc", "pwr-dlog", "pwr-brgc"}) {
    MilpModel m;
    FormulationArtifacts art = attach_relaxation(m, one, MethodTag::parse(tag), "");
    CHECK(art.integers.empty());
    CHECK(m.find_variable("f_x"));
  }
  Relaxation1D sin8 = build_relaxation(function_by_name("sin"), 0.0, 2 * std::numbers::pi, {9, 1, 12});
  REQUIRE(sin8.pieces.size() == 8);
  for (const MethodTag& t : method_roster()) {
    if (t.family == MethodFamily::GND) continue;
    MilpModel m;
    FormulationArtifacts art = attach_relaxation(m, sin8, t, "s");
    int d = t.family == MethodFamily::PWR ? 8 : sin8.lower.segments();
    if (t.family == MethodFamily::Base) {
      int both = expected_integer_count(t, sin8.lower.segments()) + expected_integer_count(t, sin8.upper.segments());
      CHECK(static_cast<int>(art.integers.size()) == both);
    } else if (t.family == MethodFamily::Merged) {
      std::set<Rational> merged(sin8.lower.x.begin(), sin8.lower.x.end());
      merged.insert(sin8.upper.x.begin(), sin8.upper.x.end());
      CHECK(static_cast<int>(art.integers.size()) == expected_integer_count(t, static_cast<int>(merged.size()) - 1));
    } else {
      CHECK(static_cast<int>(art.integers.size()) == expected_integer_count(t, d));
    }
  }
  MilpModel g;
  CHECK_THROWS_AS(attach_relaxation(g, sin8, MethodTag::parse("gnd-gray"), "s"), UsageError);
}
