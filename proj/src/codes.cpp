#include "pwrelax/codes.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pwrelax/cdc.hpp"

namespace pwrelax {

GrayCode::GrayCode(int width, std::vector<std::vector<std::uint8_t>> words) : width_(width), words_(std::move(words)) {
  if (width_ < 0) throw UsageError("negative code width");
  for (const auto& w : words_) {
    if (static_cast<int>(w.size()) != width_) throw UsageError("code word has the wrong width");
    for (auto b : w)
      if (b > 1) throw UsageError("code word entries must be 0 or 1");
  }
}

GrayCode GrayCode::prefix(int d) const {
  if (d < 0 || d > size()) throw UsageError("prefix length out of range");
  return GrayCode(width_, std::vector<std::vector<std::uint8_t>>(words_.begin(), words_.begin() + d));
}

bool GrayCode::is_gray() const {
  std::set<std::vector<std::uint8_t>> seen(words_.begin(), words_.end());
  if (static_cast<int>(seen.size()) != size()) return false;
  for (int i = 0; i + 1 < size(); ++i) {
    int diff = 0;
    for (int k = 0; k < width_; ++k) diff += bit(i, k) != bit(i + 1, k);
    if (diff != 1) return false;
  }
  return true;
}

std::string GrayCode::str() const {
  std::ostringstream os;
  for (int i = 0; i < size(); ++i) {
    if (i) os << ' ';
    for (int k = 0; k < width_; ++k) os << bit(i, k);
  }
  return os.str();
}

EdgeRanking::EdgeRanking(std::vector<int> labels) : labels_(std::move(labels)) {
  if (!is_reversed_edge_ranking(labels_)) throw UsageError("labels are not a reversed edge ranking");
}

int EdgeRanking::rank_count() const { return labels_.empty() ? 0 : *std::max_element(labels_.begin(), labels_.end()); }

std::string EdgeRanking::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < labels_.size(); ++i) os << (i ? "," : "") << labels_[i];
  os << ')';
  return os.str();
}

int ceil_log2(int n) {
  if (n < 1) throw UsageError("ceil_log2 needs a positive argument");
  int r = 0;
  while ((1 << r) < n) ++r;
  return r;
}

GrayCode brgc(int width) {
  if (width < 1) throw UsageError("reflected Gray code needs width >= 1");
  std::vector<std::vector<std::uint8_t>> words = {{0}, {1}};
  for (int b = 2; b <= width; ++b) {
    std::vector<std::vector<std::uint8_t>> next;
    next.reserve(words.size() * 2);
    for (const auto& w : words) {
      std::vector<std::uint8_t> x{0};
      x.insert(x.end(), w.begin(), w.end());
      next.push_back(std::move(x));
    }
    for (auto it = words.rbegin(); it != words.rend(); ++it) {
      std::vector<std::uint8_t> x{1};
      x.insert(x.end(), it->begin(), it->end());
      next.push_back(std::move(x));
    }
    words = std::move(next);
  }
  return GrayCode(width, std::move(words));
}

GrayCode brgc_prefix(int d) {
  if (d < 1) throw UsageError("code length must be positive");
  int r = ceil_log2(d);
  if (r == 0) return GrayCode(0, {{}});
  return brgc(r).prefix(d);
}

bool is_reversed_edge_ranking(const std::vector<int>& labels) {
  for (int l : labels)
    if (l < 1) return false;
  // equal labels need a strictly smaller label strictly between them
  for (std::size_t a = 0; a < labels.size(); ++a) {
    int smallest_between = labels[a];
    for (std::size_t b = a + 1; b < labels.size(); ++b) {
      if (labels[b] == labels[a] && smallest_between >= labels[a]) return false;
      smallest_between = std::min(smallest_between, labels[b]);
    }
  }
  return true;
}

EdgeRanking label_path(int n, const std::function<int(int, int)>& choose_cut) {
  if (n < 1) throw UsageError("path needs at least one vertex");
  std::vector<int> labels(static_cast<std::size_t>(n - 1), 0);
  std::function<void(int, int, int)> rec = [&](int lo, int hi, int level) {
    if (hi <= lo) return;
    int e = choose_cut(lo, hi);
    if (e < lo || e >= hi) throw UsageError("cut edge outside the subpath");
    labels[static_cast<std::size_t>(e - 1)] = level;
    rec(lo, e, level + 1);
    rec(e + 1, hi, level + 1);
  };
  rec(1, n, 1);
  return EdgeRanking(std::move(labels));
}

EdgeRanking balanced_ranking(int n, CutRule rule) {
  return label_path(n, [n, rule](int lo, int hi) {
    int m = hi - lo + 1;
    int left;
    if (m % 2 == 0) {
      left = m / 2;
    } else if (rule == CutRule::Ceil) {
      left = (m + 1) / 2;
    } else if (rule == CutRule::Floor) {
      left = m / 2;
    } else {
      // compare subpath centre with the centre of the whole path (doubled to stay integral)
      int centre = lo + hi, whole = 1 + n;
      left = centre < whole ? (m + 1) / 2 : m / 2;
    }
    return lo + left - 1;
  });
}

GrayCode ranking_to_gray(const EdgeRanking& ranking) {
  int r = ranking.rank_count();
  std::vector<std::vector<std::uint8_t>> words;
  std::vector<std::uint8_t> h(static_cast<std::size_t>(r), 0);
  words.push_back(h);
  for (int label : ranking.labels()) {
    h[static_cast<std::size_t>(label - 1)] ^= 1;
    words.push_back(h);
  }
  return GrayCode(r, std::move(words));
}

GrayCode balanced_gray(int d, CutRule rule) { return ranking_to_gray(balanced_ranking(d, rule)); }

ZigzagCode zigzag_code(int width) {
  GrayCode g = brgc(width);
  ZigzagCode z;
  z.width = width;
  std::vector<int> c(static_cast<std::size_t>(width), 0);
  z.rows.push_back(c);
  for (int i = 1; i < g.size(); ++i) {
    for (int k = 0; k < width; ++k) c[static_cast<std::size_t>(k)] += g.bit(i, k) != g.bit(i - 1, k);
    z.rows.push_back(c);
  }
  return z;
}

bool separates_words_from_pairs(const GrayCode& code) {
  const int d = code.size(), t = code.width();
  for (int b = 0; b + 1 < d; ++b) {
    for (int a = 0; a < d; ++a) {
      if (a == b || a == b + 1) continue;
      bool found = false;
      for (int j = 0; j < t && !found; ++j)
        found = code.bit(b, j) == code.bit(b + 1, j) && code.bit(a, j) != code.bit(b, j);
      if (!found) return false;
    }
  }
  return true;
}

bool separates_distant_pairs(const GrayCode& code) {
  const int d = code.size(), t = code.width();
  for (int a = 0; a + 1 < d; ++a) {
    for (int b = a + 2; b + 1 < d; ++b) {
      bool found = false;
      for (int j = 0; j < t && !found; ++j)
        found = code.bit(a, j) == code.bit(a + 1, j) && code.bit(b, j) == code.bit(b + 1, j) &&
                code.bit(a, j) != code.bit(b, j);
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace pwrelax
