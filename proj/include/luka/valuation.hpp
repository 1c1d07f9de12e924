#pragma once

#include <vector>

#include "luka/rational.hpp"

namespace luka {

/// A base point u0 plus an ordered flag of pairwise-orthogonal directions u1..ut.
///
/// Directions are arbitrary nonzero rational vectors rather than unit vectors;
/// membership questions are invariant under positive rescaling of each u_i.
struct DifferentialValuation {
  Point base;
  std::vector<Point> directions;

  std::size_t dim() const { return base.size(); }
  std::size_t order() const { return directions.size(); }
};

}  // namespace luka
