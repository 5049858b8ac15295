#include <doctest.h>

#include <cmath>

#include "pwrelax/oracles.hpp"
#include "pwrelax/suites.hpp"

using namespace pwrelax;

namespace {

CdcFamily chain6() {
  std::vector<IndexSet> sets;
  for (int i = 0; i < 6; ++i) sets.push_back({2 * i + 1, 2 * i + 2, 2 * i + 3});
  return CdcFamily(sets);
}

}  // namespace

TEST_CASE("support check on the six-set chain") {
  for (Method m : {Method::Gray, Method::Biclique}) {
    MilpModel model;
    PwrEncoding enc;
    enc.method = m;
    FormulationArtifacts art = cdc_formulation(model, chain6(), enc);
    CHECK(support_union_check(chain6(), model, art).pass);
    // without the first killing row some binary vector admits too much
    MilpModel broken = model;
    broken.remove_constraint(*broken.find_constraint("cdc." + method_name(m) + ".L1"));
    OracleResult r = support_union_check(chain6(), broken, art);
    CHECK_FALSE(r.pass);
    CHECK(r.witness.rfind("z=", 0) == 0);
  }
  // a Gray form for a different family leaves sets uncovered
  MilpModel sos;
  PwrEncoding enc;
  enc.method = Method::Gray;
  FormulationArtifacts art = cdc_formulation(sos, sos2_family(13), enc);
  CHECK_FALSE(support_union_check(chain6(), sos, art).pass);
}

TEST_CASE("extended check on incremental and merged forms") {
  Breakpoints bp{{Rational(0), Rational(1), Rational(2), Rational(4)}, {Rational(1), Rational(0), Rational(2), Rational(-1)}};
  MilpModel model;
  FormulationArtifacts art = pwl_formulation(model, bp, Method::Inc, "g");
  CHECK(extended_union_check(sos2_family(4), model, art, 20, 3).pass);
  MilpModel broken = model;
  broken.remove_constraint(*broken.find_constraint("g.inc.next1"));
  CHECK_FALSE(extended_union_check(sos2_family(4), broken, art, 20, 3).pass);

  Breakpoints f{{Rational(0), Rational(2), Rational(6)}, {Rational(0), Rational(1), Rational(0)}};
  Breakpoints g{{Rational(0), Rational(3), Rational(4), Rational(6)}, {Rational(2), Rational(-1), Rational(0), Rational(1)}};
  MilpModel merged;
  FormulationArtifacts ma = merged_formulation(merged, {f, g}, Method::LogE, "m");
  CHECK(extended_union_check(sos2_family(5), merged, ma, 10, 9).pass);

  MilpModel pwr;
  FormulationArtifacts pa = cdc_formulation(pwr, chain6(), {Method::Inc});
  CHECK(extended_union_check(chain6(), pwr, pa, 5, 1).pass);
}

TEST_CASE("ideality") {
  MilpModel gray;
  PwrEncoding enc;
  enc.method = Method::Gray;
  FormulationArtifacts art = cdc_formulation(gray, chain6(), enc);
  IdealityResult r = ideality_check(gray, art, 100, 5);
  CHECK(r.pass);
  CHECK(r.trials == 100);
  CHECK(r.fractional == 0);

  MilpModel cc;
  FormulationArtifacts ca = sos2_formulation(cc, 6, Method::CC);
  IdealityResult info = ideality_check(cc, ca, 200, 5, true);
  CHECK(info.pass);
  CHECK(info.fractional > 0);
  CHECK_FALSE(ideality_check(cc, ca, 200, 5).pass);
}

TEST_CASE("envelope soundness catches swapped bounds") {
  Relaxation1D r = build_relaxation(function_by_name("exp"), -1.0, 2.0, {4, 2, 12});
  CHECK(envelope_soundness(r, function_by_name("exp"), 500, 1).pass);
  Relaxation1D swapped = r;
  std::swap(swapped.lower, swapped.upper);
  OracleResult s = envelope_soundness(swapped, function_by_name("exp"), 500, 1);
  CHECK_FALSE(s.pass);
  CHECK_FALSE(s.witness.empty());
  CHECK_FALSE(envelope_soundness(r, function_by_name("sin"), 500, 1).pass);
}

TEST_CASE("dual bound validity") {
  auto square = [](Rng& rng) -> std::optional<double> {
    double x = rng.uniform(-1, 1);
    return x * x;
  };
  CHECK(dual_bound_validity(0.0, false, square, 1000, 4).pass);
  CHECK_FALSE(dual_bound_validity(0.5, false, square, 1000, 4).pass);
  CHECK(dual_bound_validity(1.0, true, square, 1000, 4).pass);
  CHECK_FALSE(dual_bound_validity(0.5, true, square, 1000, 4).pass);
  auto none = [](Rng&) -> std::optional<double> { return std::nullopt; };
  // no feasible sample means no evidence either way
  CHECK_FALSE(dual_bound_validity(0.0, false, none, 10, 4).pass);
}

TEST_CASE("report formatting") {
  VerificationReport rep{"demo", 7, {}};
  rep.add("ok", {});
  CHECK(rep.passed());
  rep.add("bad", {false, "z=01", "detail"});
  CHECK_FALSE(rep.passed());
  CHECK(rep.table().find("z=01") != std::string::npos);
  CHECK(rep.to_json().find("\"suite\"") != std::string::npos);
}
