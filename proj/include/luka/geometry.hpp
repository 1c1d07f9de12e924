#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "luka/rational.hpp"
#include "luka/valuation.hpp"

namespace luka {

/// c0 + sum_i c_i x_i over Q^n.
class AffineFn {
 public:
  AffineFn() = default;
  explicit AffineFn(std::size_t n) : coeffs_(n, Rat(0)) {}
  AffineFn(Rat constant, Point coefficients) : c0_(std::move(constant)), coeffs_(std::move(coefficients)) {}

  static AffineFn constant(std::size_t n, Rat c) { return AffineFn(std::move(c), zeros(n)); }
  /// The coordinate function x_i (0-based i).
  static AffineFn coordinate(std::size_t n, std::size_t i) { return AffineFn(Rat(0), unit(n, i)); }

  std::size_t dim() const { return coeffs_.size(); }
  const Rat& constant_term() const { return c0_; }
  const Point& coefficients() const { return coeffs_; }
  bool is_constant() const { return is_zero(coeffs_); }

  Rat operator()(std::span<const Rat> x) const;
  /// Directional slope grad . u.
  Rat slope(std::span<const Rat> u) const;

  /// Positive multiple whose entries are coprime integers; used as the canonical
  /// form of a ">= 0" constraint.
  AffineFn normalized() const;

  AffineFn& operator+=(const AffineFn& o);
  AffineFn& operator-=(const AffineFn& o);
  AffineFn& operator*=(const Rat& k);
  friend AffineFn operator+(AffineFn a, const AffineFn& b) { return a += b; }
  friend AffineFn operator-(AffineFn a, const AffineFn& b) { return a -= b; }
  friend AffineFn operator*(AffineFn a, const Rat& k) { return a *= k; }
  friend AffineFn operator-(AffineFn a) { return a *= Rat(-1); }
  friend bool operator==(const AffineFn& a, const AffineFn& b) { return a.c0_ == b.c0_ && a.coeffs_ == b.coeffs_; }

 private:
  Rat c0_{0};
  Point coeffs_;
};

/// Closed polyhedron { x : h(x) >= 0 for every constraint h }.
///
/// Constraints are stored in normalized form and deduplicated. A constant
/// constraint that is trivially true is dropped; a violated one is kept as -1 >= 0.
class Polyhedron {
 public:
  explicit Polyhedron(std::size_t n = 0) : dim_(n) {}
  Polyhedron(std::size_t n, const std::vector<AffineFn>& constraints);

  static Polyhedron cube(std::size_t n);

  std::size_t dim() const { return dim_; }
  const std::vector<AffineFn>& constraints() const { return constraints_; }
  bool trivially_empty() const { return trivially_empty_; }

  void add(const AffineFn& h);
  Polyhedron intersect(const Polyhedron& other) const;

 private:
  std::size_t dim_;
  std::vector<AffineFn> constraints_;
  bool trivially_empty_ = false;
};

bool contains(const Polyhedron& region, std::span<const Rat> p);

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rat value;
  Point argmin;

  bool optimal() const { return status == LpStatus::optimal; }
};

/// Exact minimum of an affine objective over a polyhedron. A floating-point simplex
/// proposes the optimal vertex (or emptiness), which is then certified in exact
/// arithmetic; uncertified cases fall back to lp_min_exact.
LpResult lp_min(const AffineFn& objective, const Polyhedron& region);
/// Rational simplex with Bland's rule only; the reference that lp_min is tested against.
LpResult lp_min_exact(const AffineFn& objective, const Polyhedron& region);
/// Same, maximizing; `value` holds the maximum.
LpResult lp_max(const AffineFn& objective, const Polyhedron& region);

bool is_empty(const Polyhedron& region);
bool is_full_dimensional(const Polyhedron& region);

struct Box {
  Point lo;
  Point hi;
};

/// Tight axis-aligned bounds, or nullopt if the region is empty or unbounded.
std::optional<Box> bounding_box(const Polyhedron& region);

/// Vertices of a bounded polyhedron, by enumerating n-subsets of constraints.
std::vector<Point> vertices(const Polyhedron& region);

/// P subset-of Q, decided by one LP per constraint of Q.
bool is_subset(const Polyhedron& p, const Polyhedron& q);

/// Whether p lies in conv(points), decided by LP feasibility over barycentric weights.
bool in_convex_hull(std::span<const Rat> p, const std::vector<Point>& points);

/// Generators of the feasible-direction cone { u : grad h . u >= 0 for h active at x }.
/// Lineality directions appear as +-pairs. Output is primitive-integer, sorted, unique.
std::vector<Point> feasible_direction_generators(const Polyhedron& region, std::span<const Rat> x);

/// Ordered list of k+1 vertices.
struct Simplex {
  std::vector<Point> vertices;
  bool degenerate = false;
};

/// Vertices u0, u0 + u1/m, u0 + u1/m + u2/m^2, ...
Simplex flag_simplex(const DifferentialValuation& u, const Rat& m);

/// (h(u0), grad h . u1, ..., grad h . ut).
std::vector<Rat> lex_sequence(const AffineFn& h, const DifferentialValuation& u);

/// Sign of the first nonzero entry of lex_sequence, or 0.
int lex_sign(const AffineFn& h, const DifferentialValuation& u);

/// Threshold m* with sign(h(last vertex of T_{U,m})) = lex_sign(h, U) for every m >= m*:
/// 1 + ceil(sum_{k>j} |c_k| / |c_j|) for the first nonzero index j, or 1 if none.
Rat lex_threshold(const AffineFn& h, const DifferentialValuation& u);

std::string format_affine(const AffineFn& h);

}  // namespace luka
