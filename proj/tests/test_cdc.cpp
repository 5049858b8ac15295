#include <doctest.h>

#include "pwrelax/cdc.hpp"
#include "pwrelax/relax.hpp"
#include "pwrelax/suites.hpp"

using namespace pwrelax;

namespace {

// Pairs {u, v} contained together in no set.
std::set<std::pair<int, int>> conflict_oracle(const std::vector<IndexSet>& sets, int n) {
  std::set<std::pair<int, int>> out;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) {
      bool together = false;
      for (const auto& s : sets) {
        bool hu = std::find(s.begin(), s.end(), u) != s.end(), hv = std::find(s.begin(), s.end(), v) != s.end();
        together = together || (hu && hv);
      }
      if (!together) out.insert({u, v});
    }
  return out;
}

CdcFamily square2x2() { return CdcFamily({{1, 2}, {1, 4}, {2, 3}, {3, 4}}, std::vector<int>{2, 2}); }

}  // namespace

TEST_CASE("family validation") {
  CHECK_THROWS_AS(CdcFamily(std::vector<IndexSet>{}), UsageError);
  CHECK_THROWS_AS(CdcFamily({{1, 3}}), UsageError);          // id 2 missing
  CHECK_THROWS_AS(CdcFamily(std::vector<IndexSet>{{1}, {}}), UsageError);         // empty set
  CHECK_THROWS_AS(CdcFamily({{1}, {2}}, std::vector<int>{3}), UsageError);
  CdcFamily f({{2, 1}, {2, 3}});
  CHECK(f.set(0) == IndexSet{1, 2});
  CHECK(f.ground_size() == 3);
  CHECK(f.effective_shape() == std::vector<int>{2});
}

TEST_CASE("multi index is row major") {
  CdcFamily f({{1}, {2}, {3}, {4}, {5}, {6}}, std::vector<int>{3, 2});
  CHECK(f.multi_index(0) == std::vector<int>{0, 0});
  CHECK(f.multi_index(1) == std::vector<int>{0, 1});
  CHECK(f.multi_index(5) == std::vector<int>{2, 1});
  for (int i = 0; i < 6; ++i) CHECK(f.flat_index(f.multi_index(i)) == i);
}

TEST_CASE("conflict graph examples") {
  CHECK(conflict_graph(CdcFamily({{1, 2}, {2, 3}})).edges == std::set<std::pair<int, int>>{{1, 3}});
  CHECK(conflict_graph(CdcFamily({{1, 2, 3}})).edges.empty());
  std::vector<IndexSet> sets = {{1, 2, 3}, {3, 4, 5}, {5, 6, 7}};
  auto g = conflict_graph(CdcFamily(sets));
  CHECK(g.edges == conflict_oracle(sets, 7));
  CHECK(g.edges.size() == 21 - 9);
}

TEST_CASE("property: conflict graph matches pair enumeration") {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    CdcFamily f = random_g1d_family(rng, static_cast<int>(rng.integer(1, 12)), 5);
    auto g = conflict_graph(f);
    CHECK(g.edges == conflict_oracle(f.sets(), f.ground_size()));
    for (const auto& [u, v] : g.edges) {
      CHECK(u < v);
      CHECK(g.has_edge(v, u));
    }
    CHECK(conflict_graph(f).edges == g.edges);
  }
}

TEST_CASE("simplex points and membership") {
  CHECK_THROWS(SimplexPoint({{1, Rational(1, 2)}}));
  CHECK_THROWS(SimplexPoint({{1, Rational(2)}, {2, Rational(-1)}}));
  CdcFamily f({{1, 2}, {2, 3}});
  CHECK(cdc_membership(SimplexPoint({{3, Rational(1)}}), f));
  CHECK_FALSE(cdc_membership(SimplexPoint({{1, Rational(1, 2)}, {3, Rational(1, 2)}}), f));
  CdcFamily g({{1, 2, 3}, {3, 4, 5}});
  CHECK(cdc_membership(SimplexPoint({{3, Rational(1, 3)}, {4, Rational(1, 3)}, {5, Rational(1, 3)}}), g));
  CHECK(SimplexPoint({{2, Rational(0)}, {4, Rational(1)}}).support() == IndexSet{4});
}

TEST_CASE("minimal infeasible sets") {
  auto tri = CdcFamily({{1, 2}, {2, 3}, {1, 3}});
  auto s = minimal_infeasible_max_cardinality(tri);
  CHECK_FALSE(s.exceeds);
  CHECK(s.max_cardinality == 3);
  CHECK_FALSE(is_pairwise_ib_representable(tri));
  CHECK(minimal_infeasible_max_cardinality(CdcFamily({{1, 2, 3}})).max_cardinality == 0);
  CHECK(minimal_infeasible_max_cardinality(tri, 2).exceeds);
  CHECK(is_pairwise_ib_representable(square2x2()));
  CHECK(is_pairwise_ib_representable(sos2_family(6)));
  CHECK(minimal_infeasible_max_cardinality(sos2_family(6)).max_cardinality == 2);
}

TEST_CASE("property: g1d and gnd families are pairwise IB-representable") {
  Rng rng(17);
  for (int t = 0; t < 40; ++t) {
    CdcFamily f = random_g1d_family(rng, static_cast<int>(rng.integer(2, 5)), 4);
    if (f.ground_size() > 20) continue;
    CHECK(minimal_infeasible_max_cardinality(f).max_cardinality == 2);
  }
  for (auto shape : std::vector<std::vector<int>>{{2, 2}, {3, 2}, {2, 2, 2}}) {
    for (int t = 0; t < 10; ++t) {
      CdcFamily f = random_gnd_family(rng, shape);
      if (f.ground_size() > 20) continue;
      CHECK(check_gnd(f));
      CHECK(is_pairwise_ib_representable(f));
    }
  }
}

TEST_CASE("g1d recognition") {
  CHECK(check_g1d(sos2_family(7)));
  CHECK_FALSE(check_g1d(CdcFamily({{1, 2}, {2, 3}, {1, 3}})));
  CHECK(check_g1d(CdcFamily({{1, 2, 3}, {3, 4, 5}, {5, 6, 7}, {7, 8, 9}, {9, 10, 11}, {11, 12, 13}})));
}

TEST_CASE("gnd recognition and projections") {
  CHECK(check_gnd(square2x2()));
  auto proj = axis_projections(square2x2());
  REQUIRE(proj.size() == 2);
  CHECK(proj[0].sets() == std::vector<IndexSet>{{1, 2, 4}, {2, 3, 4}});
  CHECK(proj[1].sets() == std::vector<IndexSet>{{1, 2, 3}, {1, 3, 4}});

  // corner 9 shared diagonally but missing from S^{1,2}
  CdcFamily bad({{1, 5, 9}, {2, 6}, {3, 7}, {4, 8, 9}}, std::vector<int>{2, 2});
  CHECK_FALSE(check_gnd(bad));

  auto one = sos2_family(5);
  auto p1 = axis_projections(one);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0] == CdcFamily(one.sets()));

  auto mc = mccormick_grid({Rational(0), Rational(1)}, {Rational(0), Rational(1)});
  CHECK(check_gnd(mc.family));
  auto mc22 = mccormick_grid({Rational(0), Rational(1), Rational(2)}, {Rational(0), Rational(1), Rational(2)});
  CHECK(check_gnd(mc22.family));
  auto mc32 = mccormick_grid({Rational(0), Rational(1), Rational(2), Rational(3)}, {Rational(0), Rational(1), Rational(2)});
  auto pp = axis_projections(mc32.family);
  CHECK(pp[0].size() == 3);
  CHECK(pp[1].size() == 2);
}

TEST_CASE("set helpers") {
  CHECK(set_union({1, 3}, {2, 3}) == IndexSet{1, 2, 3});
  CHECK(set_intersection({1, 3}, {2, 3}) == IndexSet{3});
  CHECK(set_difference({1, 2, 3}, {2}) == IndexSet{1, 3});
  CHECK(is_subset({2}, {1, 2}));
  CHECK_FALSE(is_subset({4}, {1, 2}));
}
