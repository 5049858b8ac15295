#include "pwrelax/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "pwrelax/bicliques.hpp"
#include "pwrelax/codes.hpp"
#include "pwrelax/formulations.hpp"
#include "pwrelax/instances.hpp"
#include "pwrelax/lp_io.hpp"
#include "pwrelax/relax.hpp"

namespace pwrelax {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

OracleResult ok(std::string detail = "") { return {true, "", std::move(detail)}; }
OracleResult bad(std::string witness, std::string detail = "") { return {false, std::move(witness), std::move(detail)}; }

// Runs `body` and records its result and wall time; exceptions become failures.
template <class F>
void timed(VerificationReport& rep, const std::string& name, F&& body) {
  auto t0 = Clock::now();
  OracleResult r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r = bad(e.what(), "exception");
  }
  rep.add(name, r, since(t0));
}

std::string family_text(const CdcFamily& fam) {
  std::string s;
  for (const auto& set : fam.sets()) s += to_string(set);
  return s;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

// Random reversed edge ranking from the recursive labelling with random cuts.
EdgeRanking random_ranking(Rng& rng, int n) {
  return label_path(n, [&](int lo, int hi) { return static_cast<int>(rng.integer(lo, hi - 1)); });
}

// Lambda indices of the row named `name`, 1-based.
IndexSet row_support(const MilpModel& model, const FormulationArtifacts& art, const std::string& name) {
  auto c = model.find_constraint(name);
  if (!c) return {};
  std::map<VarId, int> lam_of;
  for (std::size_t v = 0; v < art.lambda.size(); ++v) lam_of[art.lambda[v]] = static_cast<int>(v) + 1;
  IndexSet out;
  for (const auto& [v, a] : model.constraint(*c).terms)
    if (auto it = lam_of.find(v); it != lam_of.end()) out.push_back(it->second);
  std::sort(out.begin(), out.end());
  return out;
}

IndexSet range(int a, int b) {
  IndexSet s;
  for (int v = a; v <= b; ++v) s.push_back(v);
  return s;
}

CdcFamily golden_family() {
  std::vector<IndexSet> sets;
  for (int i = 0; i < 6; ++i) sets.push_back({2 * i + 1, 2 * i + 2, 2 * i + 3});
  return CdcFamily(sets);
}

const std::vector<int>& golden_labels() {
  static const std::vector<int> labels = {3, 2, 1, 2, 3};
  return labels;
}

ScalarFunction count_function() { return function_by_name("sin"); }

Relaxation1D count_relaxation() {
  RelaxationConfig cfg;
  cfg.n_pre = 9;
  cfg.n_seg = 1;
  return build_relaxation(count_function(), 0.0, 2.0 * std::numbers::pi, cfg);
}

// Breakpoints on x_0 < ... < x_d with small integer values.
Breakpoints random_breakpoints(Rng& rng, int d) {
  Breakpoints bp;
  Rational x(0);
  for (int k = 0; k <= d; ++k) {
    bp.x.push_back(x);
    bp.y.emplace_back(rng.integer(-5, 5));
    x += Rational(rng.integer(1, 4), 2);
  }
  return bp;
}

// Two functions whose breakpoints interleave to give `grid` when merged.
std::vector<Breakpoints> interleaved(Rng& rng, const std::vector<Rational>& grid) {
  std::vector<Breakpoints> fs(2);
  const int d = static_cast<int>(grid.size()) - 1;
  for (int k = 0; k <= d; ++k) {
    for (int f = 0; f < 2; ++f) {
      if (k == 0 || k == d || k % 2 == f) {
        fs[f].x.push_back(grid[k]);
        fs[f].y.emplace_back(rng.integer(-5, 5));
      }
    }
  }
  return fs;
}

}  // namespace

CdcFamily random_g1d_family(Rng& rng, int d, int max_set) {
  if (d < 1 || max_set < 3) throw UsageError("random_g1d_family needs d >= 1 and max_set >= 3");
  std::vector<int> shared(static_cast<std::size_t>(d + 1), 0);  // shared[i]: between set i and i+1 (1-based)
  std::vector<IndexSet> sets(static_cast<std::size_t>(d));
  int next = 1;
  std::vector<int> prev_block;
  for (int i = 1; i <= d; ++i) {
    int left = shared[static_cast<std::size_t>(i - 1)];
    int right = 0;
    if (i < d) right = static_cast<int>(rng.integer(0, std::min(2, max_set - left - 1)));
    shared[static_cast<std::size_t>(i)] = right;
    int need = (left == 0 || right == 0) ? 1 : 0;
    int priv = static_cast<int>(rng.integer(need, max_set - left - right));
    IndexSet& s = sets[static_cast<std::size_t>(i - 1)];
    s.insert(s.end(), prev_block.begin(), prev_block.end());
    for (int k = 0; k < priv; ++k) s.push_back(next++);
    prev_block.clear();
    for (int k = 0; k < right; ++k) prev_block.push_back(next++);
    s.insert(s.end(), prev_block.begin(), prev_block.end());
  }
  std::vector<int> perm(static_cast<std::size_t>(next - 1));
  std::iota(perm.begin(), perm.end(), 1);
  for (std::size_t k = perm.size(); k > 1; --k) std::swap(perm[k - 1], perm[static_cast<std::size_t>(rng.integer(0, static_cast<long long>(k) - 1))]);
  for (auto& s : sets) {
    for (auto& v : s) v = perm[static_cast<std::size_t>(v - 1)];
    std::sort(s.begin(), s.end());
  }
  return CdcFamily(sets);
}

CdcFamily random_gnd_family(Rng& rng, const std::vector<int>& shape) {
  if (shape.empty()) throw UsageError("grid shape must be nonempty");
  int cells = 1;
  for (int n : shape) {
    if (n < 1) throw UsageError("grid dimensions must be positive");
    cells *= n;
  }
  const std::size_t dim = shape.size();
  std::vector<IndexSet> sets(static_cast<std::size_t>(cells));
  CdcFamily layout(std::vector<IndexSet>(static_cast<std::size_t>(cells), IndexSet{1}), shape);
  int next = 1;

  // lattice corners
  std::vector<int> corner(dim, 0);
  while (true) {
    if (rng.uniform() < 0.6) {
      int id = next++;
      for (int c = 0; c < cells; ++c) {
        auto idx = layout.multi_index(c);
        bool touches = true;
        for (std::size_t k = 0; k < dim && touches; ++k) touches = idx[k] == corner[k] || idx[k] == corner[k] - 1;
        if (touches) sets[static_cast<std::size_t>(c)].push_back(id);
      }
    }
    std::size_t k = 0;
    while (k < dim && ++corner[k] > shape[k]) corner[k++] = 0;
    if (k == dim) break;
  }
  // facet neighbours
  for (int c = 0; c < cells; ++c) {
    auto idx = layout.multi_index(c);
    for (std::size_t k = 0; k < dim; ++k) {
      if (idx[k] + 1 >= shape[k] || rng.uniform() >= 0.3) continue;
      auto nb = idx;
      ++nb[k];
      int id = next++;
      sets[static_cast<std::size_t>(c)].push_back(id);
      sets[static_cast<std::size_t>(layout.flat_index(nb))].push_back(id);
    }
  }
  for (auto& s : sets) {
    int priv = static_cast<int>(rng.integer(1, 2));
    for (int k = 0; k < priv; ++k) s.push_back(next++);
  }
  std::vector<int> perm(static_cast<std::size_t>(next - 1));
  std::iota(perm.begin(), perm.end(), 1);
  for (std::size_t k = perm.size(); k > 1; --k) std::swap(perm[k - 1], perm[static_cast<std::size_t>(rng.integer(0, static_cast<long long>(k) - 1))]);
  for (auto& s : sets) {
    for (auto& v : s) v = perm[static_cast<std::size_t>(v - 1)];
    std::sort(s.begin(), s.end());
  }
  return CdcFamily(sets, shape);
}

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> cat = {
      {"golden", "Gray and biclique rows on the 6-set chain with ranking (3,2,1,2,3)", 1.0},
      {"counts", "binary counts of the 8-piece sin relaxation", 1.0},
      {"rankings", "reversed edge ranking recognition", 1.0},
      {"codes", "Gray code invariants for d <= 32", 10.0},
      {"covers", "biclique cover validity on 200 random g1d families", 30.0},
      {"unions", "union equivalence on 100 random g1d families", 300.0},
      {"ideality", "integral LP vertices for log-sized formulations", 300.0},
      {"grids", "gnd families, edge-union identity, grid formulations", 120.0},
      {"geometry", "envelope soundness and refinement containment", 60.0},
      {"dual-bounds", "relaxation bounds on small kinematics and share-of-choice instances", 300.0},
      {"roundtrip", "LP and MPS write/parse round trip", 10.0},
  };
  return cat;
}

VerificationReport run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "golden") return suite_golden(seed);
  if (name == "counts") return suite_counts(seed);
  if (name == "rankings") return suite_rankings(seed);
  if (name == "codes") return suite_codes(seed);
  if (name == "covers") return suite_covers(seed);
  if (name == "unions") return suite_unions(seed);
  if (name == "ideality") return suite_ideality(seed);
  if (name == "grids") return suite_grids(seed);
  if (name == "geometry") return suite_geometry(seed);
  if (name == "dual-bounds") return suite_dual_bounds(seed);
  if (name == "roundtrip") return suite_roundtrip(seed);
  throw UsageError("unknown suite '" + name + "'");
}

VerificationReport suite_golden(std::uint64_t seed) {
  VerificationReport rep{"golden", seed, {}};
  const CdcFamily fam = golden_family();
  const EdgeRanking ranking(golden_labels());

  timed(rep, "golden.code", [&] {
    GrayCode h = ranking_to_gray(ranking);
    const std::string want = "000 001 011 111 101 100";
    if (h.str() != want) return bad(h.str(), "expected " + want);
    return ok();
  });

  // Expected (L^j, R^j) per coordinate.
  std::vector<std::pair<IndexSet, IndexSet>> gray = {
      {range(1, 6), range(8, 13)},
      {{1, 2, 3, 4, 10, 11, 12, 13}, {6, 7, 8}},
      {{1, 2, 12, 13}, range(4, 10)},
  };
  auto biclique = gray;
  biclique[2].second = {4, 5, 9, 10};

  auto compare = [&](const std::string& method, const PwrEncoding& enc, const std::vector<std::pair<IndexSet, IndexSet>>& want) {
    MilpModel m("golden");
    FormulationArtifacts art = cdc_formulation(m, fam, enc);
    if (art.integers.size() != want.size()) return bad(std::to_string(art.integers.size()) + " binaries", "expected 3");
    for (std::size_t j = 0; j < want.size(); ++j) {
      std::string id = std::to_string(j + 1);
      IndexSet L = row_support(m, art, "cdc." + method + ".L" + id);
      IndexSet R = row_support(m, art, "cdc." + method + ".R" + id);
      if (L != want[j].first || R != want[j].second)
        return bad("pair " + id + ": L=" + to_string(L) + " R=" + to_string(R),
                   "expected L=" + to_string(want[j].first) + " R=" + to_string(want[j].second));
    }
    return ok();
  };

  timed(rep, "golden.gray_rows", [&] {
    PwrEncoding enc;
    enc.method = Method::Gray;
    enc.code = ranking_to_gray(ranking);
    return compare("gray", enc, gray);
  });
  timed(rep, "golden.biclique_rows", [&] {
    PwrEncoding enc;
    enc.method = Method::Biclique;
    enc.ranking = ranking;
    return compare("biclique", enc, biclique);
  });
  timed(rep, "golden.biclique_default_ranking", [&] {
    // the balanced ranking for six pieces is the same ranking
    EdgeRanking r = balanced_ranking(6);
    if (r.labels() != golden_labels()) return bad(r.str(), "expected (3,2,1,2,3)");
    return ok();
  });
  return rep;
}

VerificationReport suite_counts(std::uint64_t seed) {
  VerificationReport rep{"counts", seed, {}};
  Relaxation1D r;
  timed(rep, "counts.relaxation", [&] {
    r = count_relaxation();
    if (r.pieces.size() != 8) return bad(std::to_string(r.pieces.size()) + " pieces", "expected 8");
    if (r.lower.segments() < 9 || r.upper.segments() < 9)
      return bad("lower " + std::to_string(r.lower.segments()) + ", upper " + std::to_string(r.upper.segments()),
                 "expected at least 9 segments per bound");
    return ok("lower " + std::to_string(r.lower.segments()) + " and upper " + std::to_string(r.upper.segments()) + " segments");
  });
  auto count = [&](const std::string& tag, auto pred, const std::string& expect) {
    timed(rep, "counts." + tag, [&] {
      MilpModel m("counts");
      FormulationArtifacts art = attach_relaxation(m, r, MethodTag::parse(tag), "f");
      int n = static_cast<int>(art.integers.size());
      int in_model = static_cast<int>(m.integer_variables().size());
      if (n != in_model) return bad(std::to_string(n) + " vs " + std::to_string(in_model), "artifact and model disagree");
      if (!pred(n)) return bad(std::to_string(n) + " binaries", "expected " + expect);
      return ok(std::to_string(n) + " binaries");
    });
  };
  count("pwr-balanced", [](int n) { return n == 3; }, "exactly 3");
  count("pwr-brgc", [](int n) { return n == 3; }, "exactly 3");
  count("pwr-biclique", [](int n) { return n == 3; }, "exactly 3");
  count("merged-loge", [](int n) { return n == 4; }, "exactly 4");
  count("base-loge", [](int n) { return n >= 8; }, "at least 8");
  return rep;
}

VerificationReport suite_rankings(std::uint64_t seed) {
  VerificationReport rep{"rankings", seed, {}};
  timed(rep, "rankings.accept_32123", [] {
    std::vector<int> l = {3, 2, 1, 2, 3};
    return is_reversed_edge_ranking(l) ? ok() : bad(join(l), "rejected");
  });
  timed(rep, "rankings.reject_23213", [] {
    std::vector<int> l = {2, 3, 2, 1, 3};
    return is_reversed_edge_ranking(l) ? bad(join(l), "accepted") : ok();
  });
  return rep;
}

VerificationReport suite_codes(std::uint64_t seed) {
  VerificationReport rep{"codes", seed, {}};
  auto check_code = [](const GrayCode& h, int d, const std::string& what) -> OracleResult {
    if (h.size() != d) return bad(what + " has " + std::to_string(h.size()) + " words", "wrong length");
    if (!h.is_gray()) return bad(what + ": " + h.str(), "not a Gray code");
    if (!separates_words_from_pairs(h)) return bad(what + ": " + h.str(), "a word is not separated from a consecutive pair");
    if (!separates_distant_pairs(h)) return bad(what + ": " + h.str(), "distant consecutive pairs are not separated");
    return ok();
  };
  timed(rep, "codes.brgc_prefix", [&] {
    for (int d = 1; d <= 32; ++d) {
      GrayCode h = brgc_prefix(d);
      if (h.width() != ceil_log2(d)) return bad("d=" + std::to_string(d), "width is not ceil(log2 d)");
      if (auto r = check_code(h, d, "brgc_prefix(" + std::to_string(d) + ")"); !r.pass) return r;
    }
    return ok();
  });
  timed(rep, "codes.balanced_gray", [&] {
    for (int d = 1; d <= 32; ++d) {
      EdgeRanking r = balanced_ranking(d);
      if (!is_reversed_edge_ranking(r.labels())) return bad("d=" + std::to_string(d) + " " + r.str(), "not a reversed edge ranking");
      GrayCode h = balanced_gray(d);
      if (h.width() != ceil_log2(d)) return bad("d=" + std::to_string(d) + " " + r.str(), "width is not ceil(log2 d)");
      if (auto res = check_code(h, d, "balanced_gray(" + std::to_string(d) + ")"); !res.pass) return res;
    }
    return ok();
  });
  timed(rep, "codes.random_rankings", [&] {
    Rng rng(seed);
    int n = 0;
    for (int d = 1; d <= 32; ++d) {
      for (int k = 0; k < 100; ++k, ++n) {
        EdgeRanking r = random_ranking(rng, d);
        if (!is_reversed_edge_ranking(r.labels())) return bad("d=" + std::to_string(d) + " " + r.str(), "not a reversed edge ranking");
        GrayCode h = ranking_to_gray(r);
        if (h.width() != r.rank_count()) return bad(r.str(), "width differs from the number of ranks");
        if (auto res = check_code(h, d, "ranking " + r.str()); !res.pass) return res;
      }
    }
    return ok(std::to_string(n) + " rankings");
  });
  return rep;
}

VerificationReport suite_covers(std::uint64_t seed) {
  VerificationReport rep{"covers", seed, {}};
  timed(rep, "covers.random_g1d", [&] {
    Rng rng(seed);
    for (int t = 0; t < 200; ++t) {
      int d = static_cast<int>(rng.integer(1, 64));
      CdcFamily fam = random_g1d_family(rng, d, 5);
      if (!check_g1d(fam)) return bad("family " + std::to_string(t) + " " + family_text(fam), "generator produced a non-g1d family");
      ConflictGraph g = conflict_graph(fam);
      EdgeRanking random = random_ranking(rng, d);
      std::vector<std::pair<std::string, BicliqueCover>> covers = {
          {"gray/balanced", gray_cover(fam, balanced_gray(d))},
          {"gray/brgc", gray_cover(fam, brgc_prefix(d))},
          {"merge/balanced", merge_cover(fam, balanced_ranking(d))},
          {"merge/" + random.str(), merge_cover(fam, random)},
      };
      for (const auto& [what, cover] : covers)
        if (!biclique_cover_check(cover, g)) return bad("family " + std::to_string(t) + " " + what + " " + family_text(fam), "invalid cover");
    }
    return ok("200 families");
  });
  return rep;
}

VerificationReport suite_unions(std::uint64_t seed) {
  VerificationReport rep{"unions", seed, {}};
  Rng rng(seed);
  std::vector<CdcFamily> fams;
  for (int t = 0; t < 100; ++t) fams.push_back(random_g1d_family(rng, static_cast<int>(rng.integer(1, 8)), 4));
  const int samples = 10;

  auto over_families = [&](const std::string& name, auto body) {
    timed(rep, name, [&]() -> OracleResult {
      for (std::size_t t = 0; t < fams.size(); ++t) {
        OracleResult r = body(fams[t], static_cast<std::uint64_t>(t));
        if (!r.pass) return bad("family " + std::to_string(t) + " " + family_text(fams[t]) + ": " + r.witness, r.detail);
      }
      return ok(std::to_string(fams.size()) + " families");
    });
  };

  for (Method m : {Method::Gray, Method::Biclique}) {
    over_families("unions.support." + method_name(m), [&](const CdcFamily& fam, std::uint64_t) {
      MilpModel model("u");
      PwrEncoding enc;
      enc.method = m;
      FormulationArtifacts art = cdc_formulation(model, fam, enc);
      return support_union_check(fam, model, art);
    });
  }
  over_families("unions.support.logib", [&](const CdcFamily& fam, std::uint64_t) {
    MilpModel model("u");
    FormulationArtifacts art = sos2_formulation(model, fam.size(), Method::LogIB);
    return support_union_check(sos2_family(fam.size() + 1), model, art);
  });

  for (Method m : {Method::Inc, Method::DLog}) {
    over_families("unions.extended.pwr-" + method_name(m), [&](const CdcFamily& fam, std::uint64_t t) {
      MilpModel model("u");
      PwrEncoding enc;
      enc.method = m;
      FormulationArtifacts art = cdc_formulation(model, fam, enc);
      return extended_union_check(fam, model, art, samples, seed + t);
    });
  }
  for (Method m : {Method::Inc, Method::MC, Method::CC, Method::DLog, Method::LogE, Method::ZZB, Method::ZZI}) {
    over_families("unions.extended.base-" + method_name(m), [&](const CdcFamily& fam, std::uint64_t t) {
      Rng local(seed * 7919 + t);
      const int d = fam.size();
      MilpModel model("u");
      FormulationArtifacts art = pwl_formulation(model, random_breakpoints(local, d), m);
      return extended_union_check(sos2_family(d + 1), model, art, samples, seed + t);
    });
  }
  for (Method m : {Method::Inc, Method::DLog, Method::LogE, Method::ZZB, Method::ZZI}) {
    over_families("unions.extended.merged-" + method_name(m), [&](const CdcFamily& fam, std::uint64_t t) {
      Rng local(seed * 104729 + t);
      const int d = fam.size();
      Breakpoints grid = random_breakpoints(local, d);
      MilpModel model("u");
      FormulationArtifacts art = merged_formulation(model, interleaved(local, grid.x), m);
      return extended_union_check(sos2_family(d + 1), model, art, samples, seed + t);
    });
  }
  return rep;
}

VerificationReport suite_ideality(std::uint64_t seed) {
  VerificationReport rep{"ideality", seed, {}};
  Rng rng(seed);
  std::vector<CdcFamily> fams;
  for (int t = 0; t < 20; ++t) fams.push_back(random_g1d_family(rng, static_cast<int>(rng.integer(2, 16)), 5));
  const int trials = 200;

  auto run = [&](const std::string& name, auto build) {
    timed(rep, "ideality." + name, [&]() -> OracleResult {
      int total = 0;
      for (std::size_t t = 0; t < fams.size(); ++t) {
        MilpModel model("ideal");
        FormulationArtifacts art = build(model, fams[t]);
        IdealityResult r = ideality_check(model, art, trials, seed + t);
        total += r.trials;
        if (!r.pass)
          return bad("family " + std::to_string(t) + " " + family_text(fams[t]) + ": " + r.witness,
                     std::to_string(r.fractional) + " fractional vertices");
      }
      return ok(std::to_string(total) + " LPs, 0 fractional");
    });
  };
  run("gray", [](MilpModel& m, const CdcFamily& fam) {
    PwrEncoding enc;
    enc.method = Method::Gray;
    return cdc_formulation(m, fam, enc);
  });
  run("biclique", [](MilpModel& m, const CdcFamily& fam) {
    PwrEncoding enc;
    enc.method = Method::Biclique;
    return cdc_formulation(m, fam, enc);
  });
  for (Method meth : {Method::LogIB, Method::LogE, Method::ZZB, Method::ZZI})
    run(method_name(meth), [meth](MilpModel& m, const CdcFamily& fam) { return sos2_formulation(m, fam.size(), meth); });
  return rep;
}

VerificationReport suite_grids(std::uint64_t seed) {
  VerificationReport rep{"grids", seed, {}};
  Rng rng(seed);
  std::vector<CdcFamily> fams;
  const std::vector<std::vector<int>> shapes = {{2, 2}, {3, 2}, {2, 4}, {3, 3}, {4, 3}, {4, 4}, {3, 2, 2}, {2, 2, 2}};
  for (int t = 0; t < 16; ++t) fams.push_back(random_gnd_family(rng, shapes[static_cast<std::size_t>(t) % shapes.size()]));
  // McCormick grids over small decimal boxes
  auto axis = [&](int cells) {
    std::vector<Rational> bp;
    Rational x(rng.integer(-3, 0));
    for (int k = 0; k <= cells; ++k) {
      bp.push_back(x);
      x += Rational(rng.integer(1, 4), 2);
    }
    return bp;
  };
  for (auto [a, b] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {4, 4}, {4, 3}}) fams.push_back(mccormick_grid(axis(a), axis(b)).family);

  auto over = [&](const std::string& name, auto body) {
    timed(rep, name, [&]() -> OracleResult {
      for (std::size_t t = 0; t < fams.size(); ++t) {
        OracleResult r = body(fams[t]);
        if (!r.pass) return bad("family " + std::to_string(t) + " " + family_text(fams[t]) + ": " + r.witness, r.detail);
      }
      return ok(std::to_string(fams.size()) + " families");
    });
  };
  over("grids.check_gnd", [](const CdcFamily& fam) { return check_gnd(fam) ? ok() : bad("", "not gnd"); });
  over("grids.edge_union", [](const CdcFamily& fam) {
    auto whole = conflict_graph(fam).edges;
    std::set<std::pair<int, int>> joined;
    for (const auto& p : axis_projections(fam)) {
      auto e = conflict_graph(p).edges;
      joined.insert(e.begin(), e.end());
    }
    if (whole == joined) return ok();
    for (const auto& e : whole)
      if (!joined.count(e)) return bad("edge " + std::to_string(e.first) + "-" + std::to_string(e.second), "missing from the projections");
    for (const auto& e : joined)
      if (!whole.count(e)) return bad("edge " + std::to_string(e.first) + "-" + std::to_string(e.second), "not an edge of the family");
    return bad("", "edge sets differ");
  });
  for (Method m : {Method::Gray, Method::Biclique}) {
    over("grids.support." + method_name(m), [m](const CdcFamily& fam) {
      MilpModel model("g");
      std::vector<AxisEncoding> axes(fam.effective_shape().size());
      for (auto& a : axes) a.method = m;
      FormulationArtifacts art = gnd_formulation(model, fam, axes);
      return support_union_check(fam, model, art);
    });
  }
  return rep;
}

VerificationReport suite_geometry(std::uint64_t seed) {
  VerificationReport rep{"geometry", seed, {}};
  struct Case {
    ScalarFunction f;
    double lo, hi;
  };
  std::vector<Case> cases = {
      {function_by_name("sin"), 0.0, 2.0 * std::numbers::pi},
      {function_by_name("exp"), -1.0, 2.0},
      {logistic_function(0.5), -4.0, 4.0},
  };
  for (const auto& c : cases) {
    timed(rep, "geometry.envelope." + c.f.name, [&]() -> OracleResult {
      for (int n_pre : {3, 5, 8}) {
        for (int n_seg : {1, 2, 4}) {
          Relaxation1D r = build_relaxation(c.f, c.lo, c.hi, {n_pre, n_seg, 12});
          OracleResult res = envelope_soundness(r, c.f, 1000, seed, 1e-9);
          if (!res.pass) return bad("n_pre=" + std::to_string(n_pre) + " n_seg=" + std::to_string(n_seg) + " " + res.witness, res.detail);
        }
      }
      return ok();
    });
    timed(rep, "geometry.refinement." + c.f.name, [&]() -> OracleResult {
      for (int n_pre : {3, 5, 8}) {
        Relaxation1D r1 = build_relaxation(c.f, c.lo, c.hi, {n_pre, 1, 12});
        Relaxation1D r2 = build_relaxation(c.f, c.lo, c.hi, {n_pre, 2, 12});
        Relaxation1D r4 = build_relaxation(c.f, c.lo, c.hi, {n_pre, 4, 12});
        if (!relaxation_within(r2, r1, 1e-9)) return bad("n_pre=" + std::to_string(n_pre), "n_seg=2 not inside n_seg=1");
        if (!relaxation_within(r4, r2, 1e-9)) return bad("n_pre=" + std::to_string(n_pre), "n_seg=4 not inside n_seg=2");
      }
      return ok();
    });
  }
  return rep;
}

VerificationReport suite_dual_bounds(std::uint64_t seed) {
  VerificationReport rep{"dual-bounds", seed, {}};
  const MethodTag tag = MethodTag::parse("pwr-biclique");
  auto solve_and_check = [&](const InstanceModel& im, auto sampler) -> OracleResult {
    MipSolution sol = mip_solve(im.model);
    if (sol.status != MipStatus::Optimal || !sol.dual) return bad("status " + to_string(sol.status), "relaxation not solved");
    const bool maxi = im.model.maximize();
    for (std::size_t k = 1; k < sol.dual_trace.size(); ++k) {
      bool mono = maxi ? sol.dual_trace[k] <= sol.dual_trace[k - 1] : sol.dual_trace[k] >= sol.dual_trace[k - 1];
      if (!mono) return bad("node " + std::to_string(k), "dual bound trace is not monotone");
    }
    OracleResult r = dual_bound_validity(sol.dual->to_double(), maxi, sampler, 1000, seed, 1e-9);
    std::ostringstream d;
    d << "bound " << sol.dual->approx_decimal() << ", " << sol.nodes << " nodes, " << r.detail;
    r.detail = d.str();
    return r;
  };
  timed(rep, "dual-bounds.kinematics", [&] {
    KinematicsInstance inst = gen_kinematics(2, seed);
    InstanceModel im = build_kinematics_model(inst, tag, {8, 1, 12});
    return solve_and_check(im, [&](Rng& r) { return sample_kinematics(inst, r); });
  });
  timed(rep, "dual-bounds.share_of_choice", [&] {
    SocInstance inst = gen_soc(2, 2, 3, Rational(1, 5), seed);
    InstanceModel im = build_soc_model(inst, tag, {8, 1, 12});
    return solve_and_check(im, [&](Rng& r) { return sample_soc(inst, r); });
  });
  return rep;
}

VerificationReport suite_roundtrip(std::uint64_t seed) {
  VerificationReport rep{"roundtrip", seed, {}};
  std::vector<std::pair<std::string, MilpModel>> models;
  {
    const CdcFamily fam = golden_family();
    for (Method m : {Method::Gray, Method::Biclique, Method::Inc, Method::DLog}) {
      MilpModel model("golden_" + method_name(m));
      PwrEncoding enc;
      enc.method = m;
      if (m == Method::Gray) enc.code = ranking_to_gray(EdgeRanking(golden_labels()));
      if (m == Method::Biclique) enc.ranking = EdgeRanking(golden_labels());
      cdc_formulation(model, fam, enc);
      models.emplace_back(model.name(), std::move(model));
    }
  }
  {
    Relaxation1D r = count_relaxation();
    for (const MethodTag& tag : method_roster()) {
      if (tag.family == MethodFamily::GND) continue;
      MilpModel model("sin_" + tag.str());
      FormulationArtifacts art = attach_relaxation(model, r, tag, "f");
      model.set_objective(true, LinearExpr::var(art.y[0]) - LinearExpr::var(*art.x) * Rational(1, 3));
      models.emplace_back(model.name(), std::move(model));
    }
  }
  {
    MilpModel model("grid");
    Rng rng(seed);
    CdcFamily fam = random_gnd_family(rng, {3, 2, 2});
    gnd_formulation(model, fam, std::vector<AxisEncoding>(3));
    models.emplace_back(model.name(), std::move(model));
  }
  {
    InstanceModel k = build_kinematics_model(gen_kinematics(2, seed), MethodTag::parse("pwr-biclique"), {8, 1, 12});
    models.emplace_back("kinematics", std::move(k.model));
    InstanceModel s = build_soc_model(gen_soc(2, 2, 3, Rational(1, 5), seed), MethodTag::parse("merged-zzi"), {8, 1, 12});
    models.emplace_back("share_of_choice", std::move(s.model));
  }
  timed(rep, "roundtrip.lp", [&]() -> OracleResult {
    for (const auto& [name, m] : models) {
      std::string text = write_lp(m);
      MilpModel back = parse_lp(text);
      if (!(back == m)) return bad(name, "LP re-parse differs");
      if (write_lp(back) != text) return bad(name, "LP rewrite differs");
    }
    return ok(std::to_string(models.size()) + " models");
  });
  timed(rep, "roundtrip.mps", [&]() -> OracleResult {
    for (const auto& [name, m] : models) {
      std::string text = write_mps(m);
      MilpModel back = parse_mps(text);
      if (!(back == m)) return bad(name, "MPS re-parse differs");
      if (write_mps(back) != text) return bad(name, "MPS rewrite differs");
    }
    return ok(std::to_string(models.size()) + " models");
  });
  return rep;
}

}  // namespace pwrelax
