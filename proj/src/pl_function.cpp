#include "luka/pl_function.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "luka/kernels.hpp"

namespace luka {

std::optional<Cell> make_cell(Polyhedron region, AffineFn piece) {
  if (!is_full_dimensional(region)) return std::nullopt;
  auto box = bounding_box(region);
  if (!box) return std::nullopt;
  return Cell{std::move(region), std::move(piece), std::move(*box)};
}

namespace {

Cell cube_cell(std::size_t n, AffineFn piece) {
  Box box{zeros(n), Point(n, Rat(1))};
  return Cell{Polyhedron::cube(n), std::move(piece), std::move(box)};
}

void require_in_cube(std::span<const Rat> v, std::size_t n) {
  if (v.size() != n) {
    throw DimensionError("point has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(n));
  }
  for (const auto& x : v) {
    if (x < 0 || x > 1) throw InputError("point " + format_point(v) + " lies outside the unit cube");
  }
}

bool in_box(const Box& b, std::span<const Rat> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < b.lo[i] || v[i] > b.hi[i]) return false;
  }
  return true;
}

bool box_subset(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    if (a.lo[i] < b.lo[i] || a.hi[i] > b.hi[i]) return false;
  }
  return true;
}

using CellList = std::shared_ptr<const std::vector<Cell>>;

kernels::Combine combine_of(Connective k) {
  switch (k) {
    case Connective::oplus: return kernels::Combine::oplus;
    case Connective::otimes: return kernels::Combine::otimes;
    case Connective::impl: return kernels::Combine::impl;
    case Connective::max: return kernels::Combine::max;
    case Connective::min: return kernels::Combine::min;
    default: throw std::logic_error("combine_of: not a binary connective");
  }
}

CellList compile_rec(const Formula& f, std::size_t n, std::unordered_map<const void*, CellList>& memo) {
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  std::vector<Cell> cells;
  switch (f.kind()) {
    case Connective::var:
      cells.push_back(cube_cell(n, AffineFn::coordinate(n, f.index() - 1)));
      break;
    case Connective::neg: {
      const auto inner = compile_rec(f.left(), n, memo);
      const AffineFn one = AffineFn::constant(n, 1);
      cells.reserve(inner->size());
      for (const auto& c : *inner) cells.push_back(Cell{c.region, one - c.piece, c.box});
      break;
    }
    default: {
      const auto a = compile_rec(f.left(), n, memo);
      const bool same = f.left().id() == f.right().id();
      const auto b = same ? a : compile_rec(f.right(), n, memo);
      cells = kernels::overlay(*a, *b, combine_of(f.kind()), same);
    }
  }
  auto out = std::make_shared<const std::vector<Cell>>(std::move(cells));
  memo.emplace(f.id(), out);
  return out;
}

Rat eval_rec(const Formula& f, std::span<const Rat> v, std::unordered_map<const void*, Rat>& memo) {
  if (f.kind() == Connective::var) {
    if (f.index() > v.size()) {
      throw DimensionError("variable X" + std::to_string(f.index()) + " exceeds point dimension " +
                           std::to_string(v.size()));
    }
    return v[f.index() - 1];
  }
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  Rat r;
  const Rat a = eval_rec(f.left(), v, memo);
  if (f.kind() == Connective::neg) {
    r = 1 - a;
  } else {
    const Rat b = eval_rec(f.right(), v, memo);
    switch (f.kind()) {
      case Connective::impl: r = std::min(Rat(1), Rat(1 - a + b)); break;
      case Connective::oplus: r = std::min(Rat(1), Rat(a + b)); break;
      case Connective::otimes: r = std::max(Rat(0), Rat(a + b - 1)); break;
      case Connective::max: r = std::max(a, b); break;
      case Connective::min: r = std::min(a, b); break;
      default: break;
    }
  }
  memo.emplace(f.id(), r);
  return r;
}

// First cell all of whose constraints are lexicographically nonnegative along U.
std::optional<std::size_t> find_germ(const PLFunction& F, const DifferentialValuation& U) {
  const auto& cells = F.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (U.base.size() == F.dim() && !in_box(cells[i].box, U.base)) continue;
    bool ok = true;
    for (const auto& h : cells[i].region.constraints()) {
      if (lex_sign(h, U) < 0) {
        ok = false;
        break;
      }
    }
    if (ok) return i;
  }
  return std::nullopt;
}

void append_coeffs(std::ostringstream& os, const AffineFn& h) {
  os << to_string(h.constant_term());
  for (const auto& c : h.coefficients()) os << ' ' << to_string(c);
}

}  // namespace

PLFunction PLFunction::coordinate(std::size_t n, std::size_t i) {
  if (i >= n) throw DimensionError("coordinate index out of range");
  return PLFunction(n, {cube_cell(n, AffineFn::coordinate(n, i))});
}

PLFunction PLFunction::constant(std::size_t n, const Rat& c) {
  if (c < 0 || c > 1) throw InputError("constant outside [0,1]");
  return PLFunction(n, {cube_cell(n, AffineFn::constant(n, c))});
}

PLFunction compile(const Formula& f, std::size_t n) {
  const unsigned needed = max_variable(f);
  if (n < needed || n == 0) {
    throw DimensionError("dimension " + std::to_string(n) + " is smaller than the largest variable index " +
                         std::to_string(needed));
  }
  std::unordered_map<const void*, CellList> memo;
  const auto cells = compile_rec(f, n, memo);
  return PLFunction(n, *cells);
}

Rat eval_formula(const Formula& f, std::span<const Rat> v) {
  for (const auto& x : v) {
    if (x < 0 || x > 1) throw InputError("point " + format_point(v) + " lies outside the unit cube");
  }
  std::unordered_map<const void*, Rat> memo;
  return eval_rec(f, v, memo);
}

std::size_t locate_cell(const PLFunction& F, std::span<const Rat> v) {
  require_in_cube(v, F.dim());
  const auto& cells = F.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (in_box(cells[i].box, v) && contains(cells[i].region, v)) return i;
  }
  throw std::logic_error("locate_cell: cells do not cover the point " + format_point(v));
}

Rat eval_pl(const PLFunction& F, std::span<const Rat> v) { return F.cells()[locate_cell(F, v)].piece(v); }

Rat dir_deriv(const PLFunction& F, std::span<const Rat> v, std::span<const Rat> u) {
  require_in_cube(v, F.dim());
  if (u.size() != F.dim()) throw DimensionError("direction dimension does not match the function");
  if (is_zero(u)) throw InputError("direction must be nonzero");
  DifferentialValuation U{Point(v.begin(), v.end()), {Point(u.begin(), u.end())}};
  const Polyhedron cube = Polyhedron::cube(F.dim());
  for (const auto& h : cube.constraints()) {
    if (lex_sign(h, U) < 0) {
      throw InputError("direction " + format_point(u) + " leaves the cube immediately at " + format_point(v));
    }
  }
  const auto g = find_germ(F, U);
  if (!g) throw std::logic_error("dir_deriv: no cell contains the germ segment");
  return F.cells()[*g].piece.slope(u);
}

RegionUnion one_set(const PLFunction& F) {
  RegionUnion out{F.dim(), {}};
  const AffineFn one = AffineFn::constant(F.dim(), 1);
  for (const auto& c : F.cells()) {
    if (c.piece.is_constant()) {
      if (c.piece.constant_term() == 1) out.members.push_back(c.region);
      continue;
    }
    Polyhedron r = c.region;
    r.add(c.piece - one);
    r.add(one - c.piece);
    if (!is_empty(r)) out.members.push_back(std::move(r));
  }
  return out;
}

std::optional<RegionMin> min_over_region(const PLFunction& F, const RegionUnion& region) {
  if (region.dim != F.dim()) throw DimensionError("region and function dimensions differ");
  if (region.empty()) return std::nullopt;
  return kernels::min_over_members(F, region.members);
}

std::size_t germ_cell(const PLFunction& F, const DifferentialValuation& U) {
  if (U.dim() != F.dim()) throw DimensionError("valuation and function dimensions differ");
  const auto g = find_germ(F, U);
  if (!g) throw std::logic_error("germ_cell: no cell contains the flag germ; is the valuation valid?");
  return *g;
}

RegionUnion intersect(const RegionUnion& a, const RegionUnion& b) {
  if (a.dim != b.dim) throw DimensionError("region dimensions differ");
  return RegionUnion{a.dim, kernels::intersect_members(a.members, b.members)};
}

RegionUnion drop_subsumed(const RegionUnion& u) {
  const std::size_t k = u.members.size();
  std::vector<std::optional<Box>> boxes;
  boxes.reserve(k);
  for (const auto& m : u.members) boxes.push_back(bounding_box(m));
  RegionUnion out{u.dim, {}};
  for (std::size_t i = 0; i < k; ++i) {
    if (!boxes[i]) continue;
    bool drop = false;
    for (std::size_t j = 0; j < k && !drop; ++j) {
      if (j == i || !boxes[j] || !box_subset(*boxes[i], *boxes[j])) continue;
      if (!is_subset(u.members[i], u.members[j])) continue;
      // Equal members: keep the first.
      drop = j < i || !is_subset(u.members[j], u.members[i]);
    }
    if (!drop) out.members.push_back(u.members[i]);
  }
  return out;
}

RegionUnion cube_union(std::size_t n) { return RegionUnion{n, {Polyhedron::cube(n)}}; }

PLFunction lift(const PLFunction& F, const std::vector<unsigned>& from, const std::vector<unsigned>& to) {
  if (from.size() != F.dim()) throw DimensionError("lift: variable list does not match the function dimension");
  std::vector<std::size_t> pos(from.size());
  for (std::size_t k = 0; k < from.size(); ++k) {
    const auto it = std::find(to.begin(), to.end(), from[k]);
    if (it == to.end()) throw InputError("lift: target variable set does not contain X" + std::to_string(from[k]));
    pos[k] = static_cast<std::size_t>(it - to.begin());
  }
  const std::size_t m = to.size();
  auto map_fn = [&](const AffineFn& h) {
    Point c = zeros(m);
    for (std::size_t k = 0; k < pos.size(); ++k) c[pos[k]] = h.coefficients()[k];
    return AffineFn(h.constant_term(), std::move(c));
  };
  std::vector<Cell> cells;
  cells.reserve(F.cells().size());
  for (const auto& c : F.cells()) {
    Polyhedron r = Polyhedron::cube(m);
    for (const auto& h : c.region.constraints()) r.add(map_fn(h));
    Box box{zeros(m), Point(m, Rat(1))};
    for (std::size_t k = 0; k < pos.size(); ++k) {
      box.lo[pos[k]] = c.box.lo[k];
      box.hi[pos[k]] = c.box.hi[k];
    }
    cells.push_back(Cell{std::move(r), map_fn(c.piece), std::move(box)});
  }
  return PLFunction(m, std::move(cells));
}

std::string dump(const PLFunction& F) {
  std::ostringstream os;
  for (const auto& c : F.cells()) {
    os << "CELL {";
    const auto& hs = c.region.constraints();
    for (std::size_t i = 0; i < hs.size(); ++i) {
      if (i) os << "; ";
      append_coeffs(os, hs[i]);
    }
    os << "} PIECE {";
    append_coeffs(os, c.piece);
    os << "}\n";
  }
  return os.str();
}

}  // namespace luka
