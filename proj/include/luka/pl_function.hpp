#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "luka/formula.hpp"
#include "luka/geometry.hpp"
#include "luka/valuation.hpp"

namespace luka {

/// One linear region of a piecewise-linear function. `box` contains `region`
/// (not necessarily tightly) and serves as a cheap overlap filter.
struct Cell {
  Polyhedron region;
  AffineFn piece;
  Box box;
};

/// Builds a cell with a tight box, or nullopt if the region is not full-dimensional.
std::optional<Cell> make_cell(Polyhedron region, AffineFn piece);

/// A piecewise-linear map [0,1]^n -> [0,1] given by a flat list of
/// full-dimensional cells with pairwise disjoint interiors covering the cube.
/// Pieces of cells that meet agree on the common face.
class PLFunction {
 public:
  PLFunction(std::size_t n, std::vector<Cell> cells) : dim_(n), cells_(std::move(cells)) {}

  static PLFunction coordinate(std::size_t n, std::size_t i);
  static PLFunction constant(std::size_t n, const Rat& c);

  std::size_t dim() const { return dim_; }
  const std::vector<Cell>& cells() const { return cells_; }

 private:
  std::size_t dim_;
  std::vector<Cell> cells_;
};

/// Finite union of polyhedra of a common dimension, each inside [0,1]^n.
struct RegionUnion {
  std::size_t dim = 0;
  std::vector<Polyhedron> members;

  bool empty() const { return members.empty(); }
};

/// Compiles f to its piecewise-linear truth function on [0,1]^n.
/// Throws DimensionError if n is smaller than a variable index of f.
PLFunction compile(const Formula& f, std::size_t n);

/// Direct recursive valuation of f at v (independent of compile).
Rat eval_formula(const Formula& f, std::span<const Rat> v);

Rat eval_pl(const PLFunction& F, std::span<const Rat> v);

/// Index of the first cell containing v; throws DimensionError/InputError if v is
/// of the wrong dimension or outside the cube.
std::size_t locate_cell(const PLFunction& F, std::span<const Rat> v);

/// One-sided derivative of F at v along u (u not normalized). Throws if the
/// segment from v along u leaves the cube immediately.
Rat dir_deriv(const PLFunction& F, std::span<const Rat> v, std::span<const Rat> u);

/// { v : F(v) = 1 } as one polyhedron per cell that attains 1.
RegionUnion one_set(const PLFunction& F);

struct RegionMin {
  Rat value;
  Point argmin;
};

/// Exact minimum of F over the union, or nullopt if the union is empty.
std::optional<RegionMin> min_over_region(const PLFunction& F, const RegionUnion& region);

/// Index of the lowest cell whose constraints all have lex_sign >= 0 along U;
/// its closure contains T_{U,m} for all large m. U must be a valid valuation.
std::size_t germ_cell(const PLFunction& F, const DifferentialValuation& U);

/// Pairwise intersection of two unions with empty members pruned.
RegionUnion intersect(const RegionUnion& a, const RegionUnion& b);

/// Drops members contained in another member.
RegionUnion drop_subsumed(const RegionUnion& u);

RegionUnion cube_union(std::size_t n);

/// Re-expresses F (over the variables `from`) over the superset `to`; both are
/// sorted variable index lists. Cells become cylinders over the extra coordinates.
PLFunction lift(const PLFunction& F, const std::vector<unsigned>& from, const std::vector<unsigned>& to);

/// "CELL {c0 c1 ..; ...} PIECE {c0 c1 ..}" per line; each affine map is written
/// as its constant followed by its coefficients.
std::string dump(const PLFunction& F);

}  // namespace luka
