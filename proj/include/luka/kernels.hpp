#pragma once

// Data-parallel inner loops of the PL engine. Each kernel has an OpenMP
// version and a serial reference with identical, schedule-independent output;
// tests compare the two and bench/ times them against each other.

#include <optional>
#include <vector>

#include "luka/pl_function.hpp"

namespace luka::kernels {

enum class Combine { oplus, otimes, impl, max, min };

/// Overlays two cell complexes and splits every overlay cell by the decision
/// hyperplane of `op`. When `same` is set the operands are one complex and only
/// diagonal pairs are formed.
std::vector<Cell> overlay(const std::vector<Cell>& a, const std::vector<Cell>& b, Combine op, bool same = false);

std::vector<Rat> eval_batch(const PLFunction& F, const std::vector<Point>& points);

std::vector<Polyhedron> intersect_members(const std::vector<Polyhedron>& a, const std::vector<Polyhedron>& b);

std::optional<RegionMin> min_over_members(const PLFunction& F, const std::vector<Polyhedron>& members);

namespace serial {

std::vector<Cell> overlay(const std::vector<Cell>& a, const std::vector<Cell>& b, Combine op, bool same = false);
std::vector<Rat> eval_batch(const PLFunction& F, const std::vector<Point>& points);
std::vector<Polyhedron> intersect_members(const std::vector<Polyhedron>& a, const std::vector<Polyhedron>& b);
std::optional<RegionMin> min_over_members(const PLFunction& F, const std::vector<Polyhedron>& members);

}  // namespace serial

/// Number of worker threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace luka::kernels
