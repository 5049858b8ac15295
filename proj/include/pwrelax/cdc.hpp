#ifndef PWRELAX_CDC_HPP
#define PWRELAX_CDC_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pwrelax/rational.hpp"

namespace pwrelax {

// Ground-set elements are dense ids 1..|J|.
using ElementId = int;
using IndexSet = std::vector<ElementId>;  // sorted, unique

// Raised for malformed inputs and violated preconditions.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an input is well formed but lacks a required structure
// (e.g. a family that is not g1d where one is needed).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite family of index sets. Sets of a multi-dimensional family are stored
// in row-major order of their multi-index.
class CdcFamily {
 public:
  CdcFamily() = default;
  explicit CdcFamily(std::vector<IndexSet> sets, std::optional<std::vector<int>> shape = std::nullopt);

  const std::vector<IndexSet>& sets() const { return sets_; }
  const IndexSet& set(int i) const { return sets_.at(static_cast<std::size_t>(i)); }
  int size() const { return static_cast<int>(sets_.size()); }
  int ground_size() const { return ground_size_; }
  const std::optional<std::vector<int>>& shape() const { return shape_; }
  // Shape, with a 1-D family reported as {size()}.
  std::vector<int> effective_shape() const;

  // 0-based multi-index <-> flat position.
  std::vector<int> multi_index(int flat) const;
  int flat_index(const std::vector<int>& multi) const;

  bool operator==(const CdcFamily& o) const { return sets_ == o.sets_ && shape_ == o.shape_; }

 private:
  std::vector<IndexSet> sets_;
  std::optional<std::vector<int>> shape_;
  int ground_size_ = 0;
};

// SOS2 over n breakpoints: sets {i, i+1}.
CdcFamily sos2_family(int n);

struct ConflictGraph {
  int num_vertices = 0;                  // vertices are 1..num_vertices
  std::set<std::pair<int, int>> edges;   // (u, v) with u < v

  bool has_edge(int u, int v) const { return edges.count(u < v ? std::make_pair(u, v) : std::make_pair(v, u)) > 0; }
};

ConflictGraph conflict_graph(const CdcFamily& fam);

// Point of the standard simplex over the ground set, given sparsely.
class SimplexPoint {
 public:
  SimplexPoint() = default;
  // Validates nonnegativity and unit sum.
  explicit SimplexPoint(std::map<ElementId, Rational> weights);
  const std::map<ElementId, Rational>& weights() const { return weights_; }
  IndexSet support() const;

 private:
  std::map<ElementId, Rational> weights_;
};

bool cdc_membership(const SimplexPoint& lambda, const CdcFamily& fam);

struct InfeasibleSetSummary {
  bool exceeds = false;      // some minimal infeasible set is larger than the cap
  int max_cardinality = 0;   // meaningful when !exceeds; 0 if every subset is feasible
};

// Largest minimal infeasible set. Enumerates all subsets, so |J| <= 20.
InfeasibleSetSummary minimal_infeasible_max_cardinality(const CdcFamily& fam, int cap = 4);
bool is_pairwise_ib_representable(const CdcFamily& fam);

bool check_g1d(const CdcFamily& fam);
bool check_gnd(const CdcFamily& fam);

// One 1-D family per axis; throws StructureError if a projection is not g1d.
std::vector<CdcFamily> axis_projections(const CdcFamily& fam);

IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
bool is_subset(const IndexSet& a, const IndexSet& b);

}  // namespace pwrelax

#endif
