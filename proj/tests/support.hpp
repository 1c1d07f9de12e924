#pragma once

// Seeded generators and test-side oracles shared by the unit and acceptance tests.
// The oracles avoid the library's compiled representation: they evaluate formulas
// directly and enumerate vertices with their own elimination.

#include <optional>
#include <random>
#include <vector>

#include "luka/consequence.hpp"
#include "luka/formula.hpp"
#include "luka/geometry.hpp"
#include "luka/pl_function.hpp"
#include "luka/valuation.hpp"

namespace luka::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// p/q in [0,1] with 1 <= q <= max_den, canonical.
  Rat unit_rat(long max_den);
  Point point(std::size_t n, long max_den);
  /// Random AST with at most `connectives` connectives over X1..Xn.
  Formula formula(std::size_t n, int connectives);
  /// Valid differential valuation of order <= max_order, built by rejection.
  DifferentialValuation valuation(std::size_t n, std::size_t max_order, long max_den = 8);
  /// Nonzero integer vector with entries in [-r, r].
  Point int_vector(std::size_t n, long r);
  /// Full-dimensional polyhedron: the cube cut by up to `cuts` random half-planes.
  Polyhedron polyhedron(std::size_t n, int cuts);

 private:
  std::mt19937_64 rng_;
};

namespace oracle {

/// Direct truth-table semantics, written independently of eval_formula.
Rat eval(const Formula& f, const Point& v);

/// Minimum of `objective` over a bounded polyhedron by enumerating candidate vertices.
std::optional<Rat> lp_min(const AffineFn& objective, const Polyhedron& region);

/// Threshold past which every vertex of T_{U,m} sits on the same side of every
/// cell constraint of F as it does in the limit, so F is affine on T_{U,m}.
Rat germ_threshold(const PLFunction& F, const DifferentialValuation& u);

/// Vertices of T_{U,m} computed from the definition.
std::vector<Point> simplex(const DifferentialValuation& u, const Rat& m);

/// Whether f evaluates to 0 at every vertex and the barycenter of T_{U,m}.
bool vanishes_on_simplex(const Formula& f, const DifferentialValuation& u, const Rat& m);

}  // namespace oracle

/// 1 - f as a formula.
inline Formula complement(const Formula& f) { return Formula::neg(f); }

/// Truncated difference max(0, f - g) = f * !g.
inline Formula minus(const Formula& f, const Formula& g) { return Formula::otimes(f, Formula::neg(g)); }

/// Lifts every variable index of f by renaming Xi to X_map[i-1].
Formula rename(const Formula& f, const std::vector<unsigned>& map);

}  // namespace luka::testing
