#ifndef PWRELAX_CODES_HPP
#define PWRELAX_CODES_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pwrelax {

// Sequence of binary words of a common width; coordinate 1 is the leftmost bit.
class GrayCode {
 public:
  GrayCode() = default;
  GrayCode(int width, std::vector<std::vector<std::uint8_t>> words);

  int width() const { return width_; }
  int size() const { return static_cast<int>(words_.size()); }
  const std::vector<std::vector<std::uint8_t>>& words() const { return words_; }
  // 0-based word index and coordinate.
  int bit(int word, int coord) const { return words_[static_cast<std::size_t>(word)][static_cast<std::size_t>(coord)]; }
  GrayCode prefix(int d) const;

  // Distinct words, consecutive words at Hamming distance one.
  bool is_gray() const;
  std::string str() const;

 private:
  int width_ = 0;
  std::vector<std::vector<std::uint8_t>> words_;
};

// Labels on the edges of a path; labels are 1-based.
class EdgeRanking {
 public:
  EdgeRanking() = default;
  // Throws UsageError unless the labels form a reversed edge ranking.
  explicit EdgeRanking(std::vector<int> labels);

  const std::vector<int>& labels() const { return labels_; }
  int num_edges() const { return static_cast<int>(labels_.size()); }
  int num_vertices() const { return num_edges() + 1; }
  int rank_count() const;
  std::string str() const;

 private:
  std::vector<int> labels_;
};

struct ZigzagCode {
  int width = 0;
  std::vector<std::vector<int>> rows;
};

// How a balanced recursion splits a subpath with an odd number of vertices.
enum class CutRule {
  Mirror,  // larger part toward the nearer end of the whole path
  Ceil,    // left part gets ceil(|V|/2)
  Floor,   // left part gets floor(|V|/2)
};

int ceil_log2(int n);

GrayCode brgc(int width);
// First d words of brgc(ceil_log2(d)).
GrayCode brgc_prefix(int d);

bool is_reversed_edge_ranking(const std::vector<int>& labels);

// Recursive labelling of a path with n vertices. choose_cut(lo, hi) receives the
// 1-based vertex range of the current subpath (hi > lo) and returns the 1-based
// index e of the cut edge (v_e, v_{e+1}), lo <= e < hi.
EdgeRanking label_path(int n, const std::function<int(int lo, int hi)>& choose_cut);

EdgeRanking balanced_ranking(int n, CutRule rule = CutRule::Mirror);
GrayCode ranking_to_gray(const EdgeRanking& ranking);
GrayCode balanced_gray(int d, CutRule rule = CutRule::Mirror);

ZigzagCode zigzag_code(int width);

// For distinct words a, b, b+1 some coordinate has h^b = h^{b+1} != h^a.
bool separates_words_from_pairs(const GrayCode& code);
// For |a - b| >= 2 some coordinate has h^a = h^{a+1} != h^b = h^{b+1}.
bool separates_distant_pairs(const GrayCode& code);

}  // namespace pwrelax

#endif
