#include "pwrelax/bicliques.hpp"

#include <algorithm>
#include <sstream>

namespace pwrelax {

namespace {

IndexSet union_of(const CdcFamily& fam, const std::vector<int>& pieces) {
  IndexSet u;
  for (int p : pieces) u = set_union(u, fam.set(p - 1));
  return u;
}

void require_g1d_match(const CdcFamily& fam, int path_vertices) {
  if (fam.shape() && fam.shape()->size() != 1) throw UsageError("expected a one-dimensional family");
  if (!check_g1d(fam)) throw StructureError("family is not g1d");
  if (path_vertices != fam.size()) throw UsageError("code or ranking length does not match the family size");
}

}  // namespace

std::string to_string(const IndexSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

BicliqueCover gray_cover(const CdcFamily& fam, const GrayCode& code) {
  require_g1d_match(fam, code.size());
  if (!code.is_gray()) throw UsageError("code is not a Gray code");
  BicliqueCover cover;
  for (int j = 0; j < code.width(); ++j) {
    IndexSet zero, one;
    for (int i = 0; i < fam.size(); ++i) {
      if (code.bit(i, j) == 0)
        zero = set_union(zero, fam.set(i));
      else
        one = set_union(one, fam.set(i));
    }
    cover.bicliques.push_back({set_difference(zero, one), set_difference(one, zero)});
  }
  return cover;
}

SeparationResult separation(const CdcFamily& fam, const EdgeRanking& ranking) {
  require_g1d_match(fam, ranking.num_vertices());
  SeparationResult res;
  const auto& labels = ranking.labels();
  // recursive split of pieces lo..hi (1-based) at their minimum-rank edge
  auto rec = [&](auto&& self, int lo, int hi) -> void {
    if (hi <= lo) return;
    int best = lo;
    for (int e = lo; e < hi; ++e)
      if (labels[static_cast<std::size_t>(e - 1)] < labels[static_cast<std::size_t>(best - 1)]) best = e;
    SeparationPair p;
    p.edge = best;
    p.rank = labels[static_cast<std::size_t>(best - 1)];
    for (int i = lo; i <= best; ++i) p.left_pieces.push_back(i);
    for (int i = best + 1; i <= hi; ++i) p.right_pieces.push_back(i);
    res.pairs.push_back(std::move(p));
    self(self, lo, best);
    self(self, best + 1, hi);
  };
  rec(rec, 1, fam.size());
  std::sort(res.pairs.begin(), res.pairs.end(), [](const auto& a, const auto& b) { return a.edge < b.edge; });
  return res;
}

BicliqueCover merge_cover(const CdcFamily& fam, const EdgeRanking& ranking, const SeparationResult& sep) {
  require_g1d_match(fam, ranking.num_vertices());
  BicliqueCover cover;
  for (int rank = 1; rank <= ranking.rank_count(); ++rank) {
    std::vector<int> a, b;
    int count = 0;
    for (const auto& p : sep.pairs) {  // edge order
      if (p.rank != rank) continue;
      ++count;
      const auto& first = count % 2 == 1 ? p.left_pieces : p.right_pieces;
      const auto& second = count % 2 == 1 ? p.right_pieces : p.left_pieces;
      a.insert(a.end(), first.begin(), first.end());
      b.insert(b.end(), second.begin(), second.end());
    }
    IndexSet ua = union_of(fam, a), ub = union_of(fam, b);
    cover.bicliques.push_back({set_difference(ua, ub), set_difference(ub, ua)});
  }
  return cover;
}

BicliqueCover merge_cover(const CdcFamily& fam, const EdgeRanking& ranking) {
  return merge_cover(fam, ranking, separation(fam, ranking));
}

std::vector<Biclique> edge_bicliques(const CdcFamily& fam, const SeparationResult& sep) {
  std::vector<Biclique> out;
  for (const auto& p : sep.pairs) {
    IndexSet mid = set_intersection(fam.set(p.edge - 1), fam.set(p.edge));
    out.push_back({set_difference(union_of(fam, p.left_pieces), mid), set_difference(union_of(fam, p.right_pieces), mid)});
  }
  return out;
}

bool biclique_cover_check(const BicliqueCover& cover, const ConflictGraph& graph) {
  std::set<std::pair<int, int>> covered;
  for (const auto& b : cover.bicliques) {
    for (int u : b.left) {
      for (int v : b.right) {
        if (u == v || !graph.has_edge(u, v)) return false;
        covered.insert(u < v ? std::make_pair(u, v) : std::make_pair(v, u));
      }
    }
  }
  return covered == graph.edges;
}

bool is_biclique_subgraph(const Biclique& small, const Biclique& big) {
  if (small.left.empty() || small.right.empty()) return true;
  return (is_subset(small.left, big.left) && is_subset(small.right, big.right)) ||
         (is_subset(small.left, big.right) && is_subset(small.right, big.left));
}

}  // namespace pwrelax
