#include <doctest.h>

#include "pwrelax/cdc.hpp"
#include "pwrelax/codes.hpp"
#include "pwrelax/random.hpp"

using namespace pwrelax;

namespace {

// Reflected Gray code word i via i xor (i >> 1), most significant bit first.
std::vector<std::uint8_t> xor_word(int i, int width) {
  int g = i ^ (i >> 1);
  std::vector<std::uint8_t> w(static_cast<std::size_t>(width));
  for (int j = 0; j < width; ++j) w[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((g >> (width - 1 - j)) & 1);
  return w;
}

// Two equal labels need a smaller label strictly between them.
bool ranking_oracle(const std::vector<int>& l) {
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j) {
      if (l[i] != l[j]) continue;
      bool smaller = false;
      for (std::size_t k = i + 1; k < j; ++k) smaller = smaller || l[k] < l[i];
      if (!smaller) return false;
    }
  return true;
}

std::vector<std::vector<std::uint8_t>> words(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<std::uint8_t>> out;
  for (auto r : rows) {
    std::vector<std::uint8_t> w;
    for (int b : r) w.push_back(static_cast<std::uint8_t>(b));
    out.push_back(w);
  }
  return out;
}

}  // namespace

TEST_CASE("brgc against the xor construction") {
  CHECK(brgc(1).words() == words({{0}, {1}}));
  CHECK(brgc(2).words() == words({{0, 0}, {0, 1}, {1, 1}, {1, 0}}));
  CHECK(brgc(3).words().front() == std::vector<std::uint8_t>{0, 0, 0});
  CHECK(brgc(3).words().back() == std::vector<std::uint8_t>{1, 0, 0});
  for (int b = 1; b <= 10; ++b) {
    GrayCode h = brgc(b);
    REQUIRE(h.size() == (1 << b));
    for (int i = 0; i < h.size(); ++i) REQUIRE(h.words()[static_cast<std::size_t>(i)] == xor_word(i, b));
  }
  CHECK(brgc_prefix(1).size() == 1);
  CHECK(brgc_prefix(1).width() == 0);
  CHECK(brgc_prefix(5).width() == 3);
  CHECK(brgc_prefix(5).words() == brgc(3).prefix(5).words());
}

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(8) == 3);
  CHECK(ceil_log2(9) == 4);
}

TEST_CASE("reversed edge ranking recognition") {
  CHECK(is_reversed_edge_ranking({3, 2, 1, 2, 3}));
  CHECK_FALSE(is_reversed_edge_ranking({2, 3, 2, 1, 3}));
  CHECK(is_reversed_edge_ranking({1}));
  CHECK_THROWS_AS(EdgeRanking({2, 3, 2, 1, 3}), UsageError);
  // all label vectors of length 5 over {1,2,3}
  for (int code = 0; code < 243; ++code) {
    std::vector<int> l;
    for (int c = code, k = 0; k < 5; ++k, c /= 3) l.push_back(c % 3 + 1);
    REQUIRE(is_reversed_edge_ranking(l) == ranking_oracle(l));
  }
}

TEST_CASE("balanced rankings") {
  CHECK(balanced_ranking(6).labels() == std::vector<int>{3, 2, 1, 2, 3});
  CHECK(balanced_ranking(2).labels() == std::vector<int>{1});
  CHECK(balanced_ranking(4).labels() == std::vector<int>{2, 1, 2});
  CHECK(balanced_ranking(6).str() == "(3,2,1,2,3)");
  // the other split rules are valid rankings but do not give the (3,2,1,2,3) shape
  CHECK(balanced_ranking(6, CutRule::Ceil).labels() == std::vector<int>{3, 2, 1, 3, 2});
  CHECK(balanced_ranking(6, CutRule::Floor).labels() == std::vector<int>{2, 3, 1, 2, 3});
  for (int n = 2; n <= 64; ++n)
    for (CutRule rule : {CutRule::Mirror, CutRule::Ceil, CutRule::Floor}) {
      EdgeRanking r = balanced_ranking(n, rule);
      REQUIRE(ranking_oracle(r.labels()));
      REQUIRE(r.rank_count() == ceil_log2(n));
    }
}

TEST_CASE("ranking to gray") {
  CHECK(ranking_to_gray(EdgeRanking({3, 2, 1, 2, 3})).words() ==
        words({{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}, {1, 0, 1}, {1, 0, 0}}));
  CHECK(ranking_to_gray(EdgeRanking({1})).words() == words({{0}, {1}}));
  CHECK(ranking_to_gray(EdgeRanking({2, 1, 2})).words() == brgc(2).words());
  CHECK(balanced_gray(6).str() == "000 001 011 111 101 100");
  CHECK(balanced_gray(2).words() == words({{0}, {1}}));
  GrayCode h8 = balanced_gray(8);
  CHECK(h8.size() == 8);
  CHECK(h8.width() == 3);
  CHECK(h8.is_gray());
}

TEST_CASE("zigzag codes") {
  CHECK(zigzag_code(1).rows == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(zigzag_code(2).rows == std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 1}, {1, 2}});
  ZigzagCode z3 = zigzag_code(3);
  CHECK(z3.rows.front() == std::vector<int>{0, 0, 0});
  int total = 0;
  for (int c : z3.rows.back()) total += c;
  CHECK(total == 7);
  // cumulative coordinate changes of brgc
  for (int r = 1; r <= 6; ++r) {
    GrayCode h = brgc(r);
    ZigzagCode z = zigzag_code(r);
    std::vector<int> acc(static_cast<std::size_t>(r), 0);
    for (int i = 0; i < h.size(); ++i) {
      if (i > 0)
        for (int j = 0; j < r; ++j) acc[static_cast<std::size_t>(j)] += h.bit(i, j) != h.bit(i - 1, j);
      REQUIRE(z.rows[static_cast<std::size_t>(i)] == acc);
    }
  }
}

TEST_CASE("property: recursive labelling with random cuts") {
  Rng rng(2024);
  for (int t = 0; t < 300; ++t) {
    int n = static_cast<int>(rng.integer(2, 40));
    EdgeRanking r = label_path(n, [&](int lo, int hi) { return static_cast<int>(rng.integer(lo, hi - 1)); });
    REQUIRE(r.num_vertices() == n);
    REQUIRE(ranking_oracle(r.labels()));
    GrayCode h = ranking_to_gray(r);
    REQUIRE(h.is_gray());
    REQUIRE(h.width() >= ceil_log2(n));
    REQUIRE(separates_words_from_pairs(h));
    REQUIRE(separates_distant_pairs(h));
  }
}

TEST_CASE("separation properties reject a non-Gray sequence") {
  // words 1 and 3 repeat, so nothing separates word 1 from the pair (3, 4)
  GrayCode bad(2, words({{0, 0}, {0, 1}, {0, 0}, {1, 0}}));
  CHECK_FALSE(bad.is_gray());
  CHECK_FALSE(separates_words_from_pairs(bad));
}
