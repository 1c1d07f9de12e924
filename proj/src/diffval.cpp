#include "luka/diffval.hpp"

#include <algorithm>

#include "luka/geometry.hpp"
#include "luka/linalg.hpp"

namespace luka {

Validation validate(const DifferentialValuation& u) {
  Validation r;
  const std::size_t n = u.dim();
  if (n == 0) {
    r.reason = "empty base point";
    return r;
  }
  if (u.order() > n) {
    r.reason = "order " + std::to_string(u.order()) + " exceeds dimension " + std::to_string(n);
    return r;
  }
  for (std::size_t i = 0; i < u.order(); ++i) {
    if (u.directions[i].size() != n) {
      r.reason = "direction " + std::to_string(i + 1) + " has the wrong dimension";
      return r;
    }
    if (is_zero(u.directions[i])) {
      r.reason = "direction " + std::to_string(i + 1) + " is zero";
      return r;
    }
  }
  for (std::size_t i = 0; i < u.order(); ++i) {
    for (std::size_t j = i + 1; j < u.order(); ++j) {
      if (dot(u.directions[i], u.directions[j]) != 0) {
        r.reason = "directions " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " are not orthogonal";
        return r;
      }
    }
  }
  for (const auto& x : u.base) {
    if (x < 0 || x > 1) {
      r.reason = "base point " + format_point(u.base) + " lies outside the cube";
      return r;
    }
  }
  const Polyhedron cube = Polyhedron::cube(n);
  Rat m = 1;
  for (const auto& h : cube.constraints()) m = std::max(m, lex_threshold(h, u));
  for (const auto& v : flag_simplex(u, m).vertices) {
    for (const auto& x : v) {
      if (x < 0 || x > 1) {
        r.reason = "T_{U,m} leaves the cube at m = " + to_string(m) + " (vertex " + format_point(v) + ")";
        r.threshold = m;
        return r;
      }
    }
  }
  r.valid = true;
  r.threshold = m;
  return r;
}

bool in_ideal(const PLFunction& f, const DifferentialValuation& u) {
  if (u.dim() != f.dim()) throw DimensionError("valuation and function dimensions differ");
  if (const auto v = validate(u); !v) throw InputError("invalid differential valuation: " + v.reason);
  const AffineFn& piece = f.cells()[germ_cell(f, u)].piece;
  if (piece(u.base) != 0) return false;
  for (const auto& d : u.directions) {
    if (piece.slope(d) != 0) return false;
  }
  return true;
}

bool satisfies(const DifferentialValuation& u, const Formula& f) {
  const unsigned need = max_variable(f);
  if (need > u.dim()) {
    throw DimensionError("formula uses X" + std::to_string(need) + " but the valuation has dimension " +
                         std::to_string(u.dim()));
  }
  return in_ideal(compile(Formula::neg(f), u.dim()), u);
}

DifferentialValuation project(const DifferentialValuation& u, const std::vector<std::size_t>& positions) {
  auto pick = [&](const Point& p) {
    Point out;
    out.reserve(positions.size());
    for (const auto i : positions) out.push_back(p.at(i));
    return out;
  };
  std::vector<Point> dirs;
  dirs.reserve(u.order());
  for (const auto& d : u.directions) dirs.push_back(pick(d));
  return DifferentialValuation{pick(u.base), gram_schmidt(dirs)};
}

namespace {

bool positive_multiple(const Point& a, const Point& b) {
  const Rat ab = dot(a, b);
  return ab > 0 && ab * ab == dot(a, a) * dot(b, b);
}

// max(0, l) or |l| for l scaled so that |l| <= 1 on the cube.
PLFunction hinge(const AffineFn& l, bool absolute) {
  const std::size_t n = l.dim();
  Rat s = abs(l.constant_term());
  for (const auto& c : l.coefficients()) s += abs(c);
  const AffineFn g = l * (1 / s);
  std::vector<Cell> cells;
  Polyhedron up = Polyhedron::cube(n);
  up.add(g);
  Polyhedron down = Polyhedron::cube(n);
  down.add(-g);
  if (auto c = make_cell(std::move(up), g)) cells.push_back(std::move(*c));
  if (auto c = make_cell(std::move(down), absolute ? -g : AffineFn::constant(n, 0))) cells.push_back(std::move(*c));
  return PLFunction(n, std::move(cells));
}

void push_hinges(std::vector<PLFunction>& out, const AffineFn& l) {
  out.push_back(hinge(l, true));
  out.push_back(hinge(l, false));
  out.push_back(hinge(-l, false));
}

// w with w.d > 0 > w.e, for d, e not positive multiples of each other.
Point splitting_direction(const Point& d, const Point& e) {
  const Rat de = dot(d, e);
  Rat t = 1;
  if (de > 0) t = (de / dot(e, e) + dot(d, d) / de) / 2;
  return sub(d, scale(e, t));
}

// An affine l whose eventual sign along U differs from its sign along P, when the
// flags differ: then one of the hinges of l vanishes near one germ and not the other.
std::optional<AffineFn> separating_functional(const DifferentialValuation& u, const DifferentialValuation& p) {
  if (u.base != p.base) {
    const Point w = sub(u.base, p.base);
    const Point mid = scale(add(u.base, p.base), Rat(1, 2));
    return AffineFn(-dot(mid, w), w);
  }
  const std::size_t t = std::max(u.order(), p.order());
  for (std::size_t i = 0; i < t; ++i) {
    Point w;
    if (i >= p.order()) {
      w = u.directions[i];
    } else if (i >= u.order()) {
      w = p.directions[i];
    } else if (!positive_multiple(u.directions[i], p.directions[i])) {
      w = splitting_direction(u.directions[i], p.directions[i]);
    } else {
      continue;
    }
    return AffineFn(-dot(u.base, w), w);
  }
  return std::nullopt;
}

}  // namespace

std::vector<PLFunction> default_probes(const DifferentialValuation& u, const std::vector<Point>& extra_dirs) {
  const std::size_t n = u.dim();
  std::vector<Point> dirs;
  for (std::size_t i = 0; i < n; ++i) dirs.push_back(unit(n, i));
  for (const auto& d : u.directions) dirs.push_back(d);
  for (const auto& d : extra_dirs) {
    if (!is_zero(d)) dirs.push_back(d);
  }
  std::vector<PLFunction> probes;
  for (const auto& w : dirs) push_hinges(probes, AffineFn(-dot(u.base, w), w));
  return probes;
}

Domination dominates(const DifferentialValuation& v, const std::vector<unsigned>& k, const DifferentialValuation& u,
                     const std::vector<unsigned>& h, const std::vector<PLFunction>& extra_probes) {
  if (k.size() != v.dim()) throw DimensionError("variable list K does not match the dimension of V");
  if (h.size() != u.dim()) throw DimensionError("variable list H does not match the dimension of U");
  if (!std::is_sorted(k.begin(), k.end()) || !std::is_sorted(h.begin(), h.end())) {
    throw InputError("variable lists must be sorted");
  }
  std::vector<std::size_t> positions;
  for (const auto x : h) {
    const auto it = std::find(k.begin(), k.end(), x);
    if (it == k.end()) throw InputError("H is not a subset of K: X" + std::to_string(x) + " is missing");
    positions.push_back(static_cast<std::size_t>(it - k.begin()));
  }
  if (const auto r = validate(v); !r) throw InputError("invalid valuation V: " + r.reason);
  if (const auto r = validate(u); !r) throw InputError("invalid valuation U: " + r.reason);

  Domination out;
  const DifferentialValuation p = project(v, positions);
  if (p.base != u.base) {
    out.detail = "projected base " + format_point(p.base) + " differs from " + format_point(u.base);
  } else if (p.order() != u.order()) {
    out.detail = "projected flag has order " + std::to_string(p.order()) + ", expected " + std::to_string(u.order());
  } else {
    out.geometric = true;
    for (std::size_t i = 0; i < u.order(); ++i) {
      if (!positive_multiple(p.directions[i], u.directions[i])) {
        out.geometric = false;
        out.detail = "projected direction " + std::to_string(i + 1) + " is not a positive multiple of U's";
        break;
      }
    }
  }

  std::vector<PLFunction> probes = default_probes(u, p.directions);
  if (const auto l = separating_functional(u, p)) push_hinges(probes, *l);
  probes.insert(probes.end(), extra_probes.begin(), extra_probes.end());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (probes[i].dim() != u.dim()) throw DimensionError("probe dimension does not match U");
    const bool in_u = in_ideal(probes[i], u);
    const bool in_v = in_ideal(lift(probes[i], h, k), v);
    if (in_u != in_v) {
      out.separated = true;
      if (out.geometric) out.detail = "probe " + std::to_string(i) + " separates the two ideals";
      break;
    }
  }
  out.holds = out.geometric && !out.separated;
  return out;
}

}  // namespace luka
