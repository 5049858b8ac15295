#include <doctest.h>

#include "pwrelax/formulations.hpp"
#include "pwrelax/lp_io.hpp"
#include "pwrelax/random.hpp"

using namespace pwrelax;

namespace {

MilpModel random_model(Rng& rng, int t) {
  MilpModel m("rnd" + std::to_string(t));
  const int n = static_cast<int>(rng.integer(1, 6));
  std::vector<VarId> xs;
  auto coef = [&] {
    // mix of integers, terminating decimals and thirds
    long long q = std::vector<long long>{1, 4, 3, 7}[static_cast<std::size_t>(rng.integer(0, 3))];
    long long p = rng.integer(-20, 20);
    return Rational(p == 0 ? 1 : p, q);
  };
  for (int j = 0; j < n; ++j) {
    std::string name = "x" + std::to_string(j);
    switch (rng.integer(0, 5)) {
      case 0: xs.push_back(m.add_variable(name, VarKind::Continuous, std::nullopt)); break;
      case 1: xs.push_back(m.add_variable(name, VarKind::Continuous, coef())); break;
      case 2: xs.push_back(m.add_variable(name, VarKind::Continuous, std::nullopt, coef())); break;
      case 3: {
        Rational lo = coef();
        xs.push_back(m.add_variable(name, VarKind::Continuous, lo, lo + Rational(rng.integer(0, 3))));
        break;
      }
      case 4: xs.push_back(m.add_variable(name, VarKind::Binary)); break;
      default: xs.push_back(m.add_variable(name, VarKind::Integer, Rational(-2), Rational(5))); break;
    }
  }
  const int rows = static_cast<int>(rng.integer(0, 4));
  for (int i = 0; i < rows; ++i) {
    LinearExpr e;
    for (VarId v : xs)
      if (rng.integer(0, 1)) e.add(v, coef());
    Sense s = std::vector<Sense>{Sense::Le, Sense::Eq, Sense::Ge}[static_cast<std::size_t>(rng.integer(0, 2))];
    m.add_constraint("c" + std::to_string(i), e, s, LinearExpr(coef()));
  }
  if (rng.integer(0, 1)) {
    std::vector<VarId> w;
    for (int k = 0; k < 3; ++k) w.push_back(m.add_variable("w" + std::to_string(k), VarKind::Continuous, Rational(0), Rational(1)));
    m.add_sos2("s", w, {Rational(1), Rational(4, 3), Rational(7, 2)});
  }
  LinearExpr obj(rng.integer(0, 1) ? coef() : Rational(0));
  for (VarId v : xs) obj.add(v, coef());
  m.set_objective(rng.integer(0, 1) == 1, obj);
  return m;
}

}  // namespace

TEST_CASE("LP text for a one-row model") {
  MilpModel m("small");
  VarId x = m.add_variable("x", VarKind::Continuous, Rational(0));
  VarId y = m.add_variable("y", VarKind::Continuous, Rational(0), Rational(5, 2));
  m.add_constraint("c1", LinearExpr::var(x) + LinearExpr::var(y, 2), Sense::Le, Rational(3));
  m.set_objective(true, LinearExpr::var(x));
  std::string lp = write_lp(m);
  CHECK(lp.find("Maximize\n") != std::string::npos);
  CHECK(lp.find(" c1: x + 2 y <= 3\n") != std::string::npos);
  CHECK(lp.find(" 0 <= y <= 2.5\n") != std::string::npos);
  CHECK(lp.find("End\n") != std::string::npos);
  CHECK(parse_lp(lp) == m);
  CHECK(parse_mps(write_mps(m)) == m);
}

TEST_CASE("empty model round trip") {
  MilpModel m("empty");
  CHECK(parse_lp(write_lp(m)) == m);
  CHECK(parse_mps(write_mps(m)) == m);
}

TEST_CASE("golden Gray rows in LP text") {
  MilpModel m("golden");
  std::vector<IndexSet> sets;
  for (int i = 0; i < 6; ++i) sets.push_back({2 * i + 1, 2 * i + 2, 2 * i + 3});
  PwrEncoding enc;
  enc.method = Method::Gray;
  enc.ranking = EdgeRanking({3, 2, 1, 2, 3});
  cdc_formulation(m, CdcFamily(sets), enc);
  std::string lp = write_lp(m);
  CHECK(lp.find("lam4 + lam5 + lam6 + lam7 + lam8 + lam9 + lam10 + z3 <= 1") != std::string::npos);
  CHECK(lp.find("lam1 + lam2 + lam12 + lam13 - z3 <= 0") != std::string::npos);
  CHECK(parse_lp(lp) == m);
}

TEST_CASE("non-terminating coefficients keep their exact value") {
  MilpModel m("third");
  VarId x = m.add_variable("x", VarKind::Continuous, Rational(2, 7), Rational(1, 3));
  m.add_constraint("c", LinearExpr::var(x, Rational(1, 3)), Sense::Ge, Rational(-1, 9));
  m.set_objective(false, LinearExpr::var(x) + LinearExpr(Rational(5, 3)));
  for (const std::string& text : {write_lp(m), write_mps(m)}) {
    MilpModel back = text.rfind("NAME", 0) == 0 ? parse_mps(text) : parse_lp(text);
    CHECK(back == m);
    CHECK(back.variable(0).upper == Rational(1, 3));
    CHECK(back.objective().constant == Rational(5, 3));
  }
}

TEST_CASE("property: random models survive LP and MPS round trips") {
  Rng rng(99);
  for (int t = 0; t < 200; ++t) {
    MilpModel m = random_model(rng, t);
    std::string lp = write_lp(m), mps = write_mps(m);
    MilpModel a = parse_lp(lp), b = parse_mps(mps);
    REQUIRE(a == m);
    REQUIRE(b == m);
    REQUIRE(write_lp(a) == lp);
    REQUIRE(write_mps(b) == mps);
  }
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(parse_lp("Minimize\n obj: x\nSubject To\n x <= 1\nEnd\n"), UsageError);
  CHECK_THROWS_AS(parse_lp("Minimize\n obj: x\nSubject To\n c: x <= 1 2\nEnd\n"), UsageError);
  CHECK_THROWS_AS(parse_lp("hello\n"), UsageError);
  CHECK_THROWS_AS(parse_mps("NAME m\nWHAT\nENDATA\n"), UsageError);
  CHECK_THROWS_AS(parse_mps("NAME m\nROWS\n N obj\nCOLUMNS\n x obj 1\nBOUNDS\n ZZ bnd x 1\nENDATA\n"), UsageError);
}
