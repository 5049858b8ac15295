#include <doctest.h>

#include "pwrelax/bicliques.hpp"
#include "pwrelax/codes.hpp"
#include "pwrelax/suites.hpp"

using namespace pwrelax;

namespace {

CdcFamily chain6() { return CdcFamily({{1, 2, 3}, {3, 4, 5}, {5, 6, 7}, {7, 8, 9}, {9, 10, 11}, {11, 12, 13}}); }

IndexSet range(int a, int b) {
  IndexSet s;
  for (int v = a; v <= b; ++v) s.push_back(v);
  return s;
}

}  // namespace

TEST_CASE("gray cover on the six-set chain") {
  BicliqueCover c = gray_cover(chain6(), ranking_to_gray(EdgeRanking({3, 2, 1, 2, 3})));
  REQUIRE(c.size() == 3);
  CHECK(c.bicliques[0].left == range(1, 6));
  CHECK(c.bicliques[0].right == range(8, 13));
  CHECK(c.bicliques[1].left == IndexSet{1, 2, 3, 4, 10, 11, 12, 13});
  CHECK(c.bicliques[1].right == IndexSet{6, 7, 8});
  CHECK(c.bicliques[2].left == IndexSet{1, 2, 12, 13});
  CHECK(c.bicliques[2].right == range(4, 10));
}

TEST_CASE("gray cover edge cases") {
  CHECK(gray_cover(CdcFamily({{1, 2}}), brgc_prefix(1)).size() == 0);
  CHECK_THROWS_AS(gray_cover(chain6(), brgc_prefix(5)), UsageError);
  CHECK_THROWS(gray_cover(CdcFamily({{1, 2}, {2, 3}, {1, 3}}), brgc_prefix(3)));
}

TEST_CASE("gray cover of SOS2 equals the independent-branching sets") {
  // breakpoint v lies in segments v-1 and v (clamped); it is on the 0 side of
  // coordinate j when both segments have bit 0, and on the 1 side when both have 1
  const int d = 4;
  GrayCode K = brgc(2);
  BicliqueCover c = gray_cover(sos2_family(d + 1), K);
  REQUIRE(c.size() == 2);
  for (int j = 0; j < 2; ++j) {
    IndexSet zero, one;
    for (int v = 1; v <= d + 1; ++v) {
      int a = K.bit(std::clamp(v - 1, 1, d) - 1, j), b = K.bit(std::clamp(v, 1, d) - 1, j);
      if (a == 0 && b == 0) zero.push_back(v);
      if (a == 1 && b == 1) one.push_back(v);
    }
    CHECK(c.bicliques[static_cast<std::size_t>(j)].left == zero);
    CHECK(c.bicliques[static_cast<std::size_t>(j)].right == one);
  }
}

TEST_CASE("separation traces") {
  SeparationResult s = separation(chain6(), EdgeRanking({3, 2, 1, 2, 3}));
  REQUIRE(s.pairs.size() == 5);
  CHECK(s.pairs[2].edge == 3);
  CHECK(s.pairs[2].rank == 1);
  CHECK(s.pairs[2].left_pieces == std::vector<int>{1, 2, 3});
  CHECK(s.pairs[2].right_pieces == std::vector<int>{4, 5, 6});
  CHECK(s.pairs[0].rank == 3);
  CHECK(s.pairs[0].left_pieces == std::vector<int>{1});
  CHECK(s.pairs[0].right_pieces == std::vector<int>{2});
  CHECK(s.pairs[4].left_pieces == std::vector<int>{5});
  CHECK(s.pairs[4].right_pieces == std::vector<int>{6});

  SeparationResult two = separation(CdcFamily({{1, 2}, {2, 3}}), EdgeRanking({1}));
  REQUIRE(two.pairs.size() == 1);
  CHECK(two.pairs[0].left_pieces == std::vector<int>{1});
  CHECK(two.pairs[0].right_pieces == std::vector<int>{2});
}

TEST_CASE("merged biclique cover on the six-set chain") {
  BicliqueCover c = merge_cover(chain6(), EdgeRanking({3, 2, 1, 2, 3}));
  REQUIRE(c.size() == 3);
  CHECK(c.bicliques[0].left == range(1, 6));
  CHECK(c.bicliques[0].right == range(8, 13));
  CHECK(c.bicliques[1].left == IndexSet{1, 2, 3, 4, 10, 11, 12, 13});
  CHECK(c.bicliques[1].right == IndexSet{6, 7, 8});
  CHECK(c.bicliques[2].left == IndexSet{1, 2, 12, 13});
  CHECK(c.bicliques[2].right == IndexSet{4, 5, 9, 10});

  CdcFamily two({{1, 2}, {2, 3}});
  BicliqueCover c2 = merge_cover(two, EdgeRanking({1}));
  REQUIRE(c2.size() == 1);
  CHECK(c2.bicliques[0].left == IndexSet{1});
  CHECK(c2.bicliques[0].right == IndexSet{3});
}

TEST_CASE("cover check rejects broken covers") {
  CdcFamily f = chain6();
  ConflictGraph g = conflict_graph(f);
  BicliqueCover c = merge_cover(f, balanced_ranking(6));
  CHECK(biclique_cover_check(c, g));
  ConflictGraph missing = g;
  missing.edges.erase(missing.edges.begin());
  CHECK_FALSE(biclique_cover_check(c, missing));
  BicliqueCover short_cover = c;
  short_cover.bicliques.pop_back();
  CHECK_FALSE(biclique_cover_check(short_cover, g));
}

TEST_CASE("property: covers on random g1d families") {
  Rng rng(77);
  for (int t = 0; t < 60; ++t) {
    int d = static_cast<int>(rng.integer(1, 40));
    CdcFamily f = random_g1d_family(rng, d, 5);
    ConflictGraph g = conflict_graph(f);
    BicliqueCover gc = gray_cover(f, balanced_gray(d));
    BicliqueCover mc = merge_cover(f, balanced_ranking(d));
    CHECK(gc.size() == ceil_log2(d));
    CHECK(mc.size() == ceil_log2(d));
    CHECK(biclique_cover_check(gc, g));
    CHECK(biclique_cover_check(mc, g));

    EdgeRanking r = label_path(d, [&](int lo, int hi) { return static_cast<int>(rng.integer(lo, hi - 1)); });
    SeparationResult sep = separation(f, r);
    BicliqueCover m = merge_cover(f, r, sep);
    CHECK(m.size() == r.rank_count());
    CHECK(gray_cover(f, ranking_to_gray(r)).size() == r.rank_count());
    CHECK(biclique_cover_check(m, g));
    // each per-edge biclique sits inside the merged biclique of its rank
    std::vector<Biclique> edges = edge_bicliques(f, sep);
    REQUIRE(edges.size() == sep.pairs.size());
    for (std::size_t k = 0; k < edges.size(); ++k)
      CHECK(is_biclique_subgraph(edges[k], m.bicliques[static_cast<std::size_t>(sep.pairs[k].rank - 1)]));
  }
}

TEST_CASE("biclique subgraph relation") {
  CHECK(is_biclique_subgraph({{1}, {3}}, {{1, 2}, {3, 4}}));
  CHECK(is_biclique_subgraph({{3}, {1}}, {{1, 2}, {3, 4}}));
  CHECK_FALSE(is_biclique_subgraph({{1}, {2}}, {{1, 2}, {3, 4}}));
  CHECK(to_string(IndexSet{1, 2}) == "{1,2}");
}
