#ifndef PWRELAX_BICLIQUES_HPP
#define PWRELAX_BICLIQUES_HPP

#include <string>
#include <vector>

#include "pwrelax/cdc.hpp"
#include "pwrelax/codes.hpp"

namespace pwrelax {

struct Biclique {
  IndexSet left, right;
  bool operator==(const Biclique& o) const { return left == o.left && right == o.right; }
};

struct BicliqueCover {
  std::vector<Biclique> bicliques;
  int size() const { return static_cast<int>(bicliques.size()); }
};

// Split of the piece path at one edge e_i = (S^i, S^{i+1}); pieces are 1-based.
struct SeparationPair {
  int edge = 0;
  int rank = 0;
  std::vector<int> left_pieces;
  std::vector<int> right_pieces;
};

// One pair per edge of the piece path, ordered by edge index.
struct SeparationResult {
  std::vector<SeparationPair> pairs;
};

// Cover from the columns of a Gray code; one biclique per coordinate.
BicliqueCover gray_cover(const CdcFamily& fam, const GrayCode& code);

SeparationResult separation(const CdcFamily& fam, const EdgeRanking& ranking);
// One biclique per rank.
BicliqueCover merge_cover(const CdcFamily& fam, const EdgeRanking& ranking, const SeparationResult& sep);
BicliqueCover merge_cover(const CdcFamily& fam, const EdgeRanking& ranking);

// Per-edge bicliques with the shared middle S^i ∩ S^{i+1} removed from both sides.
std::vector<Biclique> edge_bicliques(const CdcFamily& fam, const SeparationResult& sep);

// Every cross pair of every biclique is an edge and every edge is covered.
bool biclique_cover_check(const BicliqueCover& cover, const ConflictGraph& graph);
// Edge set of `small` contained in that of `big` (either orientation of big).
bool is_biclique_subgraph(const Biclique& small, const Biclique& big);

std::string to_string(const IndexSet& s);

}  // namespace pwrelax

#endif
