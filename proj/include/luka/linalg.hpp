#pragma once

#include <optional>
#include <vector>

#include "luka/rational.hpp"

namespace luka {

using Matrix = std::vector<Point>;  // row-major

/// Unique solution of A x = b for square A, or nullopt if A is singular.
std::optional<Point> solve(Matrix a, Point b);

/// Basis of { x in Q^n : A x = 0 }.
std::vector<Point> null_space(const Matrix& a, std::size_t n);

std::size_t rank(Matrix a);

/// Rational Gram-Schmidt in order; vectors dependent on their predecessors are dropped.
std::vector<Point> gram_schmidt(const std::vector<Point>& vectors);

/// Scales v by a positive rational so its entries are coprime integers.
Point primitive(const Point& v);

}  // namespace luka
