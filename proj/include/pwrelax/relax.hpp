#ifndef PWRELAX_RELAX_HPP
#define PWRELAX_RELAX_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "pwrelax/cdc.hpp"
#include "pwrelax/rational.hpp"

namespace pwrelax {

struct ScalarFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> df;
  // Inflection points inside the open interval (lo, hi), ascending.
  std::function<std::vector<double>(double lo, double hi)> inflections;
};

// Registry: "sin", "cos", "exp", and "logistic" (1 / (1 + exp(u - x))).
ScalarFunction function_by_name(const std::string& name, double u = 0.0);
ScalarFunction logistic_function(double u);

enum class Orientation { Convex, Concave, Affine };
std::string to_string(Orientation o);
Orientation orientation_from_string(const std::string& s);

struct Point2 {
  Rational x, y;
};

// Continuous piecewise-linear function through (x[k], y[k]) with x strictly increasing.
struct Breakpoints {
  std::vector<Rational> x, y;
  int segments() const { return static_cast<int>(x.size()) - 1; }
};

Rational pwl_eval(const Breakpoints& bp, const Rational& x);
double pwl_eval(const Breakpoints& bp, double x);
void validate_breakpoints(const Breakpoints& bp);

struct RelaxationConfig {
  int n_pre = 5;        // pre-split grid points, endpoints included
  int n_seg = 1;        // tangent-chain segments per piece: 1, 2, 4, ...
  int snap_digits = 12; // vertices are snapped to multiples of 10^-snap_digits
};

struct Piece {
  Rational x_lo, x_hi;
  std::vector<int> vertex_ids;  // 1-based, counterclockwise
  Orientation orientation = Orientation::Affine;
};

struct Relaxation1D {
  std::string function;
  Rational lo, hi;
  std::vector<Piece> pieces;
  std::vector<Point2> vertices;  // vertex id v is vertices[v - 1]
  CdcFamily family;              // one set per piece
  Breakpoints lower, upper;
};

// Grid of n_pre points plus interior inflection points, snapped and deduplicated.
std::vector<Rational> split_breakpoints(const ScalarFunction& f, double lo, double hi, const RelaxationConfig& cfg);

// Intersection points of the tangent chain on [a, b], left to right (double precision).
std::vector<std::array<double, 2>> tangent_chain(const ScalarFunction& f, double a, double b, int n_seg);

Orientation classify_interval(const ScalarFunction& f, double a, double b);

Relaxation1D build_relaxation(const ScalarFunction& f, double lo, double hi, const RelaxationConfig& cfg);

// (x, y) inside the polygon of one piece, up to `tol`.
bool piece_contains(const Relaxation1D& r, int piece, double x, double y, double tol);
bool relaxation_contains(const Relaxation1D& r, double x, double y, double tol);
// Every vertex of `inner` lies in some piece of `outer`.
bool relaxation_within(const Relaxation1D& inner, const Relaxation1D& outer, double tol);

struct McCormickGrid {
  CdcFamily family;                         // shape (d1, d2), one set per cell
  std::vector<std::array<Rational, 3>> points;  // id v -> (x1, x2, x1 * x2)
  std::vector<Rational> bp1, bp2;
};

// Breakpoint lists include both box ends.
McCormickGrid mccormick_grid(const std::vector<Rational>& bp1, const std::vector<Rational>& bp2);

}  // namespace pwrelax

#endif
