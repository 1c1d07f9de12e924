#pragma once

#include <string>
#include <vector>

#include "luka/formula.hpp"
#include "luka/pl_function.hpp"
#include "luka/valuation.hpp"

namespace luka {

struct Validation {
  bool valid = false;
  std::string reason;  // empty when valid
  Rat threshold{1};    // m-dagger: T_{U,m} lies in the cube for every m >= threshold

  explicit operator bool() const { return valid; }
};

/// Never throws; malformed input (mismatched dimensions, zero or non-orthogonal
/// directions, base outside the cube, simplex escaping the cube) is reported.
Validation validate(const DifferentialValuation& u);

/// F vanishes on T_{U,m} for all large m, decided on the piece of the germ cell.
/// Throws InputError if U is invalid, DimensionError on mismatched dimensions.
bool in_ideal(const PLFunction& f, const DifferentialValuation& u);

/// U satisfies f iff 1 - f is in the ideal of U.
bool satisfies(const DifferentialValuation& u, const Formula& f);

/// Base point and Gram-Schmidt flag of U restricted to the coordinates `positions`.
DifferentialValuation project(const DifferentialValuation& u, const std::vector<std::size_t>& positions);

struct Domination {
  bool holds = false;
  bool geometric = false;  // verdict of the projected-flag comparison
  bool separated = false;  // some probe lies in exactly one of the two ideals
  std::string detail;

  /// The probes confirm the geometric verdict (a separating probe iff no domination).
  bool probes_agree() const { return geometric != separated; }
};

/// Whether the ideal of V (over variables `k`) meets M(I^H) in the ideal of U
/// (over variables `h`). Variable lists are sorted indices; `h` must be a subset
/// of `k`. The geometric answer is cross-checked on probe functions over H: the
/// built-in family, the hinges of an affine map whose eventual signs along the two
/// flags differ (when the flags differ), and `extra_probes`. A separating probe
/// forces false.
Domination dominates(const DifferentialValuation& v, const std::vector<unsigned>& k, const DifferentialValuation& u,
                     const std::vector<unsigned>& h, const std::vector<PLFunction>& extra_probes = {});

/// Built-in probes around U: for w among the axes, U's directions and `extra_dirs`,
/// the functions |l|, max(0, l), max(0, -l) with l(x) = (x - u0).w, scaled into [0,1].
std::vector<PLFunction> default_probes(const DifferentialValuation& u, const std::vector<Point>& extra_dirs = {});

}  // namespace luka
