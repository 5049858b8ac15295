#include "pwrelax/cdc.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace pwrelax {

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

bool is_subset(const IndexSet& a, const IndexSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

CdcFamily::CdcFamily(std::vector<IndexSet> sets, std::optional<std::vector<int>> shape)
    : sets_(std::move(sets)), shape_(std::move(shape)) {
  if (sets_.empty()) throw UsageError("family must contain at least one set");
  std::set<ElementId> all;
  for (auto& s : sets_) {
    if (s.empty()) throw UsageError("family contains an empty set");
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (ElementId v : s) {
      if (v < 1) throw UsageError("element ids must be positive, got " + std::to_string(v));
      all.insert(v);
    }
  }
  ground_size_ = static_cast<int>(all.size());
  if (*all.rbegin() != ground_size_) throw UsageError("element ids must be dense 1..|J|");
  if (shape_) {
    long long prod = 1;
    for (int d : *shape_) {
      if (d < 1) throw UsageError("shape entries must be positive");
      prod *= d;
    }
    if (prod != static_cast<long long>(sets_.size())) throw UsageError("shape does not match the number of sets");
  }
}

std::vector<int> CdcFamily::effective_shape() const {
  if (shape_) return *shape_;
  return {size()};
}

std::vector<int> CdcFamily::multi_index(int flat) const {
  std::vector<int> sh = effective_shape();
  std::vector<int> idx(sh.size());
  for (int k = static_cast<int>(sh.size()) - 1; k >= 0; --k) {
    idx[static_cast<std::size_t>(k)] = flat % sh[static_cast<std::size_t>(k)];
    flat /= sh[static_cast<std::size_t>(k)];
  }
  return idx;
}

int CdcFamily::flat_index(const std::vector<int>& multi) const {
  std::vector<int> sh = effective_shape();
  if (multi.size() != sh.size()) throw UsageError("multi-index has wrong dimension");
  int flat = 0;
  for (std::size_t k = 0; k < sh.size(); ++k) {
    if (multi[k] < 0 || multi[k] >= sh[k]) throw UsageError("multi-index out of range");
    flat = flat * sh[k] + multi[k];
  }
  return flat;
}

CdcFamily sos2_family(int n) {
  if (n < 2) throw UsageError("SOS2 needs at least two breakpoints");
  std::vector<IndexSet> sets;
  for (int i = 1; i < n; ++i) sets.push_back({i, i + 1});
  return CdcFamily(std::move(sets));
}

ConflictGraph conflict_graph(const CdcFamily& fam) {
  int n = fam.ground_size();
  std::vector<std::vector<char>> together(static_cast<std::size_t>(n + 1), std::vector<char>(static_cast<std::size_t>(n + 1), 0));
  for (const auto& s : fam.sets())
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b) together[static_cast<std::size_t>(s[a])][static_cast<std::size_t>(s[b])] = 1;
  ConflictGraph g;
  g.num_vertices = n;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      if (!together[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) g.edges.insert({u, v});
  return g;
}

SimplexPoint::SimplexPoint(std::map<ElementId, Rational> weights) : weights_(std::move(weights)) {
  Rational sum;
  for (const auto& [v, w] : weights_) {
    if (v < 1) throw UsageError("simplex point has a non-positive element id");
    if (w.sign() < 0) throw UsageError("simplex point has a negative weight");
    sum += w;
  }
  if (sum != Rational(1)) throw UsageError("simplex point weights do not sum to one");
}

IndexSet SimplexPoint::support() const {
  IndexSet s;
  for (const auto& [v, w] : weights_)
    if (!w.is_zero()) s.push_back(v);
  return s;
}

bool cdc_membership(const SimplexPoint& lambda, const CdcFamily& fam) {
  IndexSet supp = lambda.support();
  for (const auto& s : fam.sets())
    if (is_subset(supp, s)) return true;
  return false;
}

InfeasibleSetSummary minimal_infeasible_max_cardinality(const CdcFamily& fam, int cap) {
  int n = fam.ground_size();
  if (n > 20) throw UsageError("minimal infeasible set enumeration is limited to |J| <= 20");
  std::uint32_t total = 1u << n;
  std::vector<char> feasible(total, 0);
  for (const auto& s : fam.sets()) {
    std::uint32_t m = 0;
    for (ElementId v : s) m |= 1u << (v - 1);
    // all submasks of m
    for (std::uint32_t sub = m;; sub = (sub - 1) & m) {
      feasible[sub] = 1;
      if (sub == 0) break;
    }
  }
  int best = 0;
  for (std::uint32_t t = 1; t < total; ++t) {
    if (feasible[t]) continue;
    bool minimal = true;
    for (std::uint32_t rest = t; rest; rest &= rest - 1) {
      std::uint32_t bit = rest & (~rest + 1);
      if (!feasible[t ^ bit]) {
        minimal = false;
        break;
      }
    }
    if (minimal) best = std::max(best, __builtin_popcount(t));
  }
  InfeasibleSetSummary r;
  r.exceeds = best > cap;
  r.max_cardinality = r.exceeds ? 0 : best;
  return r;
}

bool is_pairwise_ib_representable(const CdcFamily& fam) {
  auto r = minimal_infeasible_max_cardinality(fam, 2);
  return !r.exceeds;
}

bool check_g1d(const CdcFamily& fam) {
  for (int i = 0; i < fam.size(); ++i)
    for (int j = i + 2; j < fam.size(); ++j)
      if (!set_intersection(fam.set(i), fam.set(j)).empty()) return false;
  return true;
}

bool check_gnd(const CdcFamily& fam) {
  const int d = fam.size();
  std::vector<std::vector<int>> idx;
  for (int i = 0; i < d; ++i) idx.push_back(fam.multi_index(i));
  std::vector<int> sh = fam.effective_shape();
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      int linf = 0;
      for (std::size_t k = 0; k < sh.size(); ++k) linf = std::max(linf, std::abs(idx[a][k] - idx[b][k]));
      IndexSet common = set_intersection(fam.set(a), fam.set(b));
      if (linf >= 2) {
        if (!common.empty()) return false;
        continue;
      }
      if (common.empty()) continue;
      // every cell on an l1-geodesic between a and b lies in their bounding box
      for (int v = 0; v < d; ++v) {
        bool inside = true;
        for (std::size_t k = 0; k < sh.size() && inside; ++k) {
          int lo = std::min(idx[a][k], idx[b][k]), hi = std::max(idx[a][k], idx[b][k]);
          inside = idx[v][k] >= lo && idx[v][k] <= hi;
        }
        if (inside && !is_subset(common, fam.set(v))) return false;
      }
    }
  }
  return true;
}

std::vector<CdcFamily> axis_projections(const CdcFamily& fam) {
  std::vector<int> sh = fam.effective_shape();
  std::vector<CdcFamily> out;
  for (std::size_t axis = 0; axis < sh.size(); ++axis) {
    std::vector<IndexSet> sets(static_cast<std::size_t>(sh[axis]));
    for (int i = 0; i < fam.size(); ++i) {
      int a = fam.multi_index(i)[axis];
      sets[static_cast<std::size_t>(a)] = set_union(sets[static_cast<std::size_t>(a)], fam.set(i));
    }
    CdcFamily proj(std::move(sets));
    if (!check_g1d(proj)) throw StructureError("axis projection " + std::to_string(axis + 1) + " is not g1d");
    out.push_back(std::move(proj));
  }
  return out;
}

}  // namespace pwrelax
