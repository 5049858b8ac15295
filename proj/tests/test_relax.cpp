#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pwrelax/formulations.hpp"
#include "pwrelax/oracles.hpp"
#include "pwrelax/relax.hpp"

using namespace pwrelax;

namespace {

constexpr double kPi = std::numbers::pi;

Rational snap(double v) { return Rational::snap_decimal(v, 12); }

}  // namespace

TEST_CASE("pre-split grids") {
  auto sin5 = split_breakpoints(function_by_name("sin"), 0.0, 2 * kPi, {5, 1, 12});
  CHECK(sin5 == std::vector<Rational>{Rational(0), snap(kPi / 2), snap(kPi), snap(1.5 * kPi), snap(2 * kPi)});
  auto exp3 = split_breakpoints(function_by_name("exp"), 0.0, 1.0, {3, 1, 12});
  CHECK(exp3 == std::vector<Rational>{Rational(0), Rational(1, 2), Rational(1)});
  auto lg = split_breakpoints(logistic_function(0.3), -1.0, 2.0, {2, 1, 12});
  CHECK(lg == std::vector<Rational>{Rational(-1), Rational(3, 10), Rational(2)});
  CHECK_THROWS(split_breakpoints(function_by_name("exp"), 1.0, 0.0, {3, 1, 12}));
  CHECK_THROWS(function_by_name("tan"));
}

TEST_CASE("tangent chain on exp") {
  const double e = std::exp(1.0);
  auto one = tangent_chain(function_by_name("exp"), 0.0, 1.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0][0] == doctest::Approx(1.0 / (e - 1.0)).epsilon(1e-12));
  CHECK(one[0][1] == doctest::Approx(1.0 + 1.0 / (e - 1.0)).epsilon(1e-12));

  auto two = tangent_chain(function_by_name("exp"), 0.0, 1.0, 2);
  REQUIRE(two.size() == 2);
  // the middle tangent point D lies on segment EF
  double dx = 1.0 / (e - 1.0), dy = std::exp(dx);
  const auto &E = two[0], &F = two[1];
  double cross = (F[0] - E[0]) * (dy - E[1]) - (F[1] - E[1]) * (dx - E[0]);
  CHECK(std::fabs(cross) < 1e-12);
  CHECK(E[0] < dx);
  CHECK(dx < F[0]);
  CHECK(tangent_chain(function_by_name("exp"), 0.0, 1.0, 4).size() == 4);
  CHECK_THROWS(tangent_chain(function_by_name("exp"), 0.0, 1.0, 3));
}

TEST_CASE("interval classification") {
  CHECK(classify_interval(function_by_name("exp"), 0, 1) == Orientation::Convex);
  CHECK(classify_interval(function_by_name("sin"), 0, kPi) == Orientation::Concave);
  CHECK(classify_interval(function_by_name("sin"), kPi, 2 * kPi) == Orientation::Convex);
  ScalarFunction lin{"lin", [](double x) { return 2 * x + 1; }, [](double) { return 2.0; },
                     [](double, double) { return std::vector<double>{}; }};
  CHECK(classify_interval(lin, 0, 1) == Orientation::Affine);
  Relaxation1D r = build_relaxation(lin, 0.0, 1.0, {2, 1, 12});
  REQUIRE(r.pieces.size() == 1);
  CHECK(r.pieces[0].vertex_ids.size() == 2);
  CHECK(r.vertices.size() == 2);
}

TEST_CASE("sin relaxation with four pieces") {
  Relaxation1D r = build_relaxation(function_by_name("sin"), 0.0, 2 * kPi, {5, 1, 12});
  CHECK(r.pieces.size() == 4);
  CHECK(r.vertices.size() == 9);
  for (const auto& p : r.pieces) CHECK(p.vertex_ids.size() == 3);
  CHECK(r.family.sets() == std::vector<IndexSet>{{1, 2, 3}, {3, 4, 5}, {5, 6, 7}, {7, 8, 9}});
  CHECK(r.pieces[0].orientation == Orientation::Concave);
  CHECK(r.pieces[2].orientation == Orientation::Convex);
  MilpModel m;
  auto art = attach_relaxation(m, r, MethodTag::parse("pwr-biclique"), "sin");
  CHECK(art.integers.size() == 2);
}

TEST_CASE("property: relaxation families and soundness") {
  struct Case {
    ScalarFunction f;
    double lo, hi;
  };
  std::vector<Case> cases = {{function_by_name("sin"), -1.0, 5.0},
                             {function_by_name("cos"), -2.0, 2.5},
                             {function_by_name("exp"), -1.0, 2.0},
                             {logistic_function(0.5), -4.0, 4.0}};
  for (const auto& c : cases) {
    for (int n_pre : {2, 3, 5, 8}) {
      for (int n_seg : {1, 2, 4}) {
        Relaxation1D r = build_relaxation(c.f, c.lo, c.hi, {n_pre, n_seg, 12});
        REQUIRE(check_g1d(r.family));
        for (int i = 0; i + 1 < r.family.size(); ++i)
          REQUIRE(set_intersection(r.family.set(i), r.family.set(i + 1)).size() == 1);
        REQUIRE(envelope_soundness(r, c.f, 300, 7, 1e-9).pass);
        // lower chain never exceeds upper chain at any breakpoint
        for (const auto& x : r.lower.x) REQUIRE(pwl_eval(r.lower, x) <= pwl_eval(r.upper, x));
      }
      Relaxation1D r1 = build_relaxation(c.f, c.lo, c.hi, {n_pre, 1, 12});
      Relaxation1D r2 = build_relaxation(c.f, c.lo, c.hi, {n_pre, 2, 12});
      Relaxation1D r4 = build_relaxation(c.f, c.lo, c.hi, {n_pre, 4, 12});
      CHECK(relaxation_within(r2, r1, 1e-9));
      CHECK(relaxation_within(r4, r2, 1e-9));
      if (n_pre >= 3) CHECK_FALSE(relaxation_within(r1, r2, 1e-9));
    }
  }
}

TEST_CASE("piece containment") {
  Relaxation1D r = build_relaxation(function_by_name("exp"), 0.0, 1.0, {2, 1, 12});
  CHECK(piece_contains(r, 0, 0.5, std::exp(0.5), 1e-12));
  CHECK_FALSE(piece_contains(r, 0, 0.5, 2.0, 1e-9));
  CHECK_FALSE(piece_contains(r, 0, 0.5, 1.0, 1e-9));
  CHECK_FALSE(relaxation_contains(r, 1.5, std::exp(1.5), 1e-9));
}

TEST_CASE("piecewise linear evaluation") {
  Breakpoints bp{{Rational(0), Rational(1), Rational(3)}, {Rational(0), Rational(2), Rational(1)}};
  CHECK(pwl_eval(bp, Rational(1, 2)) == Rational(1));
  CHECK(pwl_eval(bp, Rational(2)) == Rational(3, 2));
  CHECK(pwl_eval(bp, 3.0) == doctest::Approx(1.0));
  CHECK_THROWS(pwl_eval(bp, Rational(4)));
  Breakpoints bad{{Rational(0), Rational(0)}, {Rational(0), Rational(1)}};
  CHECK_THROWS(validate_breakpoints(bad));
}

TEST_CASE("McCormick grids") {
  auto g22 = mccormick_grid({Rational(0), Rational(1), Rational(2)}, {Rational(-1), Rational(0), Rational(1)});
  CHECK(g22.family.size() == 4);
  CHECK(g22.family.ground_size() == 9);
  CHECK(g22.family.shape() == std::vector<int>{2, 2});
  for (const auto& p : g22.points) CHECK(p[2] == p[0] * p[1]);
  auto g11 = mccormick_grid({Rational(0), Rational(2)}, {Rational(1), Rational(3)});
  CHECK(g11.family.size() == 1);
  CHECK(g11.family.set(0) == IndexSet{1, 2, 3, 4});
  auto g32 = mccormick_grid({Rational(0), Rational(1), Rational(2), Rational(3)}, {Rational(0), Rational(1), Rational(2)});
  CHECK(axis_projections(g32.family)[0].size() == 3);
  CHECK(axis_projections(g32.family)[1].size() == 2);
}
