#include "pwrelax/relax.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pwrelax {

namespace {

constexpr double kPi = std::numbers::pi;

// Points c + k * period inside (lo, hi).
std::vector<double> periodic_points(double c, double period, double lo, double hi) {
  std::vector<double> out;
  double k0 = std::ceil((lo - c) / period);
  for (double k = k0;; k += 1.0) {
    double x = c + k * period;
    if (x >= hi) break;
    if (x > lo) out.push_back(x);
  }
  return out;
}

double cross(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

}  // namespace

ScalarFunction logistic_function(double u) {
  ScalarFunction s;
  s.name = "logistic";
  s.f = [u](double x) { return 1.0 / (1.0 + std::exp(u - x)); };
  s.df = [u](double x) {
    double p = 1.0 / (1.0 + std::exp(u - x));
    return p * (1.0 - p);
  };
  s.inflections = [u](double lo, double hi) {
    std::vector<double> v;
    if (u > lo && u < hi) v.push_back(u);
    return v;
  };
  return s;
}

ScalarFunction function_by_name(const std::string& name, double u) {
  ScalarFunction s;
  s.name = name;
  if (name == "sin") {
    s.f = [](double x) { return std::sin(x); };
    s.df = [](double x) { return std::cos(x); };
    s.inflections = [](double lo, double hi) { return periodic_points(0.0, kPi, lo, hi); };
  } else if (name == "cos") {
    s.f = [](double x) { return std::cos(x); };
    s.df = [](double x) { return -std::sin(x); };
    s.inflections = [](double lo, double hi) { return periodic_points(kPi / 2, kPi, lo, hi); };
  } else if (name == "exp") {
    s.f = [](double x) { return std::exp(x); };
    s.df = [](double x) { return std::exp(x); };
    s.inflections = [](double, double) { return std::vector<double>{}; };
  } else if (name == "logistic") {
    return logistic_function(u);
  } else {
    throw UsageError("unknown function '" + name + "'");
  }
  return s;
}

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::Convex: return "convex";
    case Orientation::Concave: return "concave";
    case Orientation::Affine: return "affine";
  }
  return "affine";
}

Orientation orientation_from_string(const std::string& s) {
  if (s == "convex") return Orientation::Convex;
  if (s == "concave") return Orientation::Concave;
  if (s == "affine") return Orientation::Affine;
  throw UsageError("unknown orientation '" + s + "'");
}

void validate_breakpoints(const Breakpoints& bp) {
  if (bp.x.size() != bp.y.size() || bp.x.size() < 2) throw UsageError("breakpoints need matching x/y lists of length >= 2");
  for (std::size_t i = 1; i < bp.x.size(); ++i)
    if (!(bp.x[i - 1] < bp.x[i])) throw UsageError("breakpoint x values must be strictly increasing");
}

Rational pwl_eval(const Breakpoints& bp, const Rational& x) {
  if (x < bp.x.front() || x > bp.x.back()) throw UsageError("point outside the breakpoint range");
  std::size_t k = static_cast<std::size_t>(std::upper_bound(bp.x.begin(), bp.x.end(), x) - bp.x.begin());
  if (k >= bp.x.size()) return bp.y.back();
  if (k == 0) return bp.y.front();
  const Rational &x0 = bp.x[k - 1], &x1 = bp.x[k];
  if (x == x0) return bp.y[k - 1];
  return bp.y[k - 1] + (bp.y[k] - bp.y[k - 1]) * (x - x0) / (x1 - x0);
}

double pwl_eval(const Breakpoints& bp, double x) {
  std::size_t n = bp.x.size();
  if (x <= bp.x.front().to_double()) return bp.y.front().to_double();
  for (std::size_t k = 1; k < n; ++k) {
    double x1 = bp.x[k].to_double();
    if (x <= x1 || k + 1 == n) {
      double x0 = bp.x[k - 1].to_double(), y0 = bp.y[k - 1].to_double(), y1 = bp.y[k].to_double();
      return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
  }
  return bp.y.back().to_double();
}

std::vector<Rational> split_breakpoints(const ScalarFunction& f, double lo, double hi, const RelaxationConfig& cfg) {
  if (!(lo < hi)) throw UsageError("relaxation domain needs lo < hi");
  if (cfg.n_pre < 2) throw UsageError("n_pre must be at least 2");
  std::vector<double> pts;
  for (int i = 0; i < cfg.n_pre; ++i) pts.push_back(i + 1 == cfg.n_pre ? hi : lo + i * (hi - lo) / (cfg.n_pre - 1));
  for (double x : f.inflections(lo, hi)) pts.push_back(x);
  std::vector<Rational> out;
  for (double x : pts) out.push_back(Rational::snap_decimal(x, cfg.snap_digits));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Orientation classify_interval(const ScalarFunction& f, double a, double b) {
  double da = f.df(a), db = f.df(b);
  double scale = 1.0 + std::max(std::fabs(da), std::fabs(db));
  if (std::fabs(db - da) <= 1e-12 * scale) return Orientation::Affine;
  return db > da ? Orientation::Convex : Orientation::Concave;
}

std::vector<std::array<double, 2>> tangent_chain(const ScalarFunction& f, double a, double b, int n_seg) {
  if (n_seg < 1 || (n_seg & (n_seg - 1)) != 0) throw UsageError("n_seg must be a power of two");
  auto meet = [&](double p, double q) -> std::array<double, 2> {
    double fp = f.f(p), fq = f.f(q), dp = f.df(p), dq = f.df(q);
    double x = (fq - fp + dp * p - dq * q) / (dp - dq);
    return {x, fp + dp * (x - p)};
  };
  std::vector<double> touch = {a, b};
  std::vector<std::array<double, 2>> cuts = {meet(a, b)};
  while (static_cast<int>(cuts.size()) < n_seg) {
    std::vector<double> next;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      next.push_back(touch[i]);
      next.push_back(cuts[i][0]);  // projection onto the curve becomes a tangent point
    }
    next.push_back(touch.back());
    touch = std::move(next);
    cuts.clear();
    for (std::size_t i = 0; i + 1 < touch.size(); ++i) cuts.push_back(meet(touch[i], touch[i + 1]));
  }
  return cuts;
}

Relaxation1D build_relaxation(const ScalarFunction& f, double lo, double hi, const RelaxationConfig& cfg) {
  std::vector<Rational> xs = split_breakpoints(f, lo, hi, cfg);
  Relaxation1D r;
  r.function = f.name;
  r.lo = xs.front();
  r.hi = xs.back();
  auto snap = [&](double v) { return Rational::snap_decimal(v, cfg.snap_digits); };
  auto on_curve = [&](const Rational& x) { return Point2{x, snap(f.f(x.to_double()))}; };

  std::vector<IndexSet> sets;
  r.vertices.push_back(on_curve(xs.front()));
  r.lower.x.push_back(r.vertices[0].x);
  r.lower.y.push_back(r.vertices[0].y);
  r.upper = r.lower;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    double a = xs[k].to_double(), b = xs[k + 1].to_double();
    Piece piece;
    piece.x_lo = xs[k];
    piece.x_hi = xs[k + 1];
    piece.orientation = classify_interval(f, a, b);
    int left_id = static_cast<int>(r.vertices.size());
    Point2 right = on_curve(xs[k + 1]);
    std::vector<int> chain_ids;
    if (piece.orientation != Orientation::Affine) {
      for (const auto& c : tangent_chain(f, a, b, cfg.n_seg)) {
        Point2 p{snap(c[0]), snap(c[1])};
        const Point2& prev = r.vertices.back();
        // snapping can collapse a cut onto its neighbour on very short intervals
        if (!(p.x > prev.x) || !(p.x < right.x)) continue;
        r.vertices.push_back(p);
        chain_ids.push_back(static_cast<int>(r.vertices.size()));
      }
      if (chain_ids.empty()) piece.orientation = Orientation::Affine;
    }
    r.vertices.push_back(right);
    int right_id = static_cast<int>(r.vertices.size());

    IndexSet ids;
    for (int v = left_id; v <= right_id; ++v) ids.push_back(v);
    sets.push_back(ids);
    if (piece.orientation == Orientation::Concave) {
      piece.vertex_ids = {left_id, right_id};
      piece.vertex_ids.insert(piece.vertex_ids.end(), chain_ids.rbegin(), chain_ids.rend());
    } else {
      piece.vertex_ids = ids;
    }
    // the tangent chain is the lower bound on convex pieces and the upper bound on concave ones
    Breakpoints& chain_side = piece.orientation == Orientation::Concave ? r.upper : r.lower;
    Breakpoints& chord_side = piece.orientation == Orientation::Concave ? r.lower : r.upper;
    for (int v : chain_ids) {
      chain_side.x.push_back(r.vertices[static_cast<std::size_t>(v - 1)].x);
      chain_side.y.push_back(r.vertices[static_cast<std::size_t>(v - 1)].y);
    }
    for (Breakpoints* side : {&chain_side, &chord_side}) {
      side->x.push_back(right.x);
      side->y.push_back(right.y);
    }
    r.pieces.push_back(std::move(piece));
  }
  r.family = CdcFamily(std::move(sets));
  return r;
}

bool piece_contains(const Relaxation1D& r, int piece, double x, double y, double tol) {
  const Piece& p = r.pieces.at(static_cast<std::size_t>(piece));
  std::vector<std::array<double, 2>> poly;
  for (int v : p.vertex_ids) {
    const Point2& q = r.vertices[static_cast<std::size_t>(v - 1)];
    poly.push_back({q.x.to_double(), q.y.to_double()});
  }
  if (x < p.x_lo.to_double() - tol || x > p.x_hi.to_double() + tol) return false;
  if (poly.size() == 2) {
    // segment: compare with the line through it
    double x0 = poly[0][0], y0 = poly[0][1], x1 = poly[1][0], y1 = poly[1][1];
    double yl = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    return std::fabs(y - yl) <= tol;
  }
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    double ex = b[0] - a[0], ey = b[1] - a[1];
    double len = std::hypot(ex, ey);
    if (len == 0.0) continue;
    // signed distance to the edge line, positive inside for ccw order
    if (cross(ex, ey, x - a[0], y - a[1]) / len < -tol) return false;
  }
  return true;
}

bool relaxation_contains(const Relaxation1D& r, double x, double y, double tol) {
  for (int i = 0; i < static_cast<int>(r.pieces.size()); ++i)
    if (piece_contains(r, i, x, y, tol)) return true;
  return false;
}

bool relaxation_within(const Relaxation1D& inner, const Relaxation1D& outer, double tol) {
  for (const Point2& p : inner.vertices)
    if (!relaxation_contains(outer, p.x.to_double(), p.y.to_double(), tol)) return false;
  return true;
}

McCormickGrid mccormick_grid(const std::vector<Rational>& bp1, const std::vector<Rational>& bp2) {
  for (const auto* bp : {&bp1, &bp2}) {
    if (bp->size() < 2) throw UsageError("each axis needs at least two breakpoints");
    for (std::size_t i = 1; i < bp->size(); ++i)
      if (!((*bp)[i - 1] < (*bp)[i])) throw UsageError("breakpoints must be strictly increasing");
  }
  const int n1 = static_cast<int>(bp1.size()), n2 = static_cast<int>(bp2.size());
  McCormickGrid g;
  g.bp1 = bp1;
  g.bp2 = bp2;
  auto id = [n2](int i, int j) { return i * n2 + j + 1; };
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) g.points.push_back({bp1[static_cast<std::size_t>(i)], bp2[static_cast<std::size_t>(j)], bp1[static_cast<std::size_t>(i)] * bp2[static_cast<std::size_t>(j)]});
  std::vector<IndexSet> sets;
  for (int i = 0; i + 1 < n1; ++i)
    for (int j = 0; j + 1 < n2; ++j) sets.push_back({id(i, j), id(i, j + 1), id(i + 1, j), id(i + 1, j + 1)});
  g.family = CdcFamily(std::move(sets), std::vector<int>{n1 - 1, n2 - 1});
  return g;
}

}  // namespace pwrelax
