#include "support.hpp"

#include <algorithm>
#include <functional>

#include "luka/diffval.hpp"
#include "luka/linalg.hpp"

namespace luka::testing {

Rat Gen::unit_rat(long max_den) {
  const long q = uniform(1, max_den);
  Rat r(uniform(0, q), q);
  r.canonicalize();
  return r;
}

Point Gen::point(std::size_t n, long max_den) {
  Point p;
  for (std::size_t i = 0; i < n; ++i) p.push_back(unit_rat(max_den));
  return p;
}

Formula Gen::formula(std::size_t n, int connectives) {
  if (connectives <= 0) return Formula::var(static_cast<unsigned>(uniform(1, static_cast<long>(n))));
  const int kind = static_cast<int>(uniform(0, 5));
  if (kind == 0) return Formula::neg(formula(n, connectives - 1));
  const int left = static_cast<int>(uniform(0, connectives - 1));
  Formula l = formula(n, left);
  Formula r = formula(n, connectives - 1 - left);
  static constexpr Connective kinds[] = {Connective::impl, Connective::oplus, Connective::otimes, Connective::max,
                                         Connective::min};
  return Formula::binary(kinds[kind - 1], std::move(l), std::move(r));
}

Point Gen::int_vector(std::size_t n, long r) {
  for (;;) {
    Point p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(Rat(uniform(-r, r)));
    if (!is_zero(p)) return p;
  }
}

DifferentialValuation Gen::valuation(std::size_t n, std::size_t max_order, long max_den) {
  for (;;) {
    DifferentialValuation u;
    u.base = point(n, max_den);
    // Push some coordinates onto the boundary, where validity is most delicate.
    for (auto& c : u.base) {
      if (coin(0.2)) c = coin() ? 1 : 0;
    }
    const auto t = static_cast<std::size_t>(uniform(0, static_cast<long>(std::min(n, max_order))));
    std::vector<Point> raw;
    for (std::size_t i = 0; i < n + 2; ++i) raw.push_back(int_vector(n, 3));
    auto flag = gram_schmidt(raw);
    if (flag.size() < t) continue;
    for (std::size_t i = 0; i < t; ++i) u.directions.push_back(primitive(flag[i]));
    if (validate(u)) return u;
  }
}

Polyhedron Gen::polyhedron(std::size_t n, int cuts) {
  for (;;) {
    Polyhedron p = Polyhedron::cube(n);
    const long k = uniform(0, cuts);
    for (long i = 0; i < k; ++i) {
      // A half-space through a random interior point with a random normal.
      const Point c = point(n, 6);
      const Point w = int_vector(n, 3);
      p.add(AffineFn(-dot(w, c), w));
    }
    if (is_full_dimensional(p)) return p;
  }
}

namespace oracle {

Rat eval(const Formula& f, const Point& v) {
  switch (f.kind()) {
    case Connective::var: return v.at(f.index() - 1);
    case Connective::neg: return 1 - eval(f.left(), v);
    default: break;
  }
  const Rat a = eval(f.left(), v);
  const Rat b = eval(f.right(), v);
  switch (f.kind()) {
    case Connective::impl: return a <= b ? Rat(1) : Rat(1 - a + b);
    case Connective::oplus: return a + b >= 1 ? Rat(1) : Rat(a + b);
    case Connective::otimes: return a + b <= 1 ? Rat(0) : Rat(a + b - 1);
    case Connective::max: return a < b ? b : a;
    case Connective::min: return a < b ? a : b;
    default: return 0;
  }
}

namespace {

// Gauss-Jordan on an augmented square system; nullopt if singular.
std::optional<Point> gauss(std::vector<Point> rows) {
  const std::size_t n = rows.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && rows[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(rows[p], rows[c]);
    const Rat inv = 1 / rows[c][c];
    for (auto& x : rows[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || rows[r][c] == 0) continue;
      const Rat k = rows[r][c];
      for (std::size_t j = c; j <= n; ++j) rows[r][j] -= k * rows[c][j];
    }
  }
  Point x;
  for (const auto& r : rows) x.push_back(r[n]);
  return x;
}

}  // namespace

std::optional<Rat> lp_min(const AffineFn& objective, const Polyhedron& region) {
  const std::size_t n = region.dim();
  const auto& hs = region.constraints();
  std::optional<Rat> best;
  std::vector<std::size_t> pick(n);
  // Enumerate n-subsets in lexicographic order.
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == n) {
      std::vector<Point> rows;
      for (const auto i : pick) {
        Point row = hs[i].coefficients();
        row.push_back(-hs[i].constant_term());
        rows.push_back(std::move(row));
      }
      const auto x = gauss(std::move(rows));
      if (!x) return;
      for (const auto& h : hs) {
        if (h(*x) < 0) return;
      }
      const Rat v = objective(*x);
      if (!best || v < *best) best = v;
      return;
    }
    for (std::size_t i = from; i < hs.size(); ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

Rat germ_threshold(const PLFunction& F, const DifferentialValuation& u) {
  Rat m = validate(u).threshold;
  for (std::size_t t = 0; t <= u.order(); ++t) {
    const DifferentialValuation prefix{u.base, {u.directions.begin(), u.directions.begin() + t}};
    for (const auto& c : F.cells()) {
      for (const auto& h : c.region.constraints()) m = std::max(m, lex_threshold(h, prefix));
    }
  }
  return m;
}

std::vector<Point> simplex(const DifferentialValuation& u, const Rat& m) {
  std::vector<Point> out{u.base};
  Rat power = 1;
  for (const auto& d : u.directions) {
    power *= m;
    Point next = out.back();
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += d[i] / power;
    out.push_back(std::move(next));
  }
  return out;
}

bool vanishes_on_simplex(const Formula& f, const DifferentialValuation& u, const Rat& m) {
  const auto vs = simplex(u, m);
  Point bary = zeros(u.dim());
  for (const auto& v : vs) {
    if (eval(f, v) != 0) return false;
    for (std::size_t i = 0; i < bary.size(); ++i) bary[i] += v[i];
  }
  for (auto& c : bary) c /= static_cast<long>(vs.size());
  return eval(f, bary) == 0;
}

}  // namespace oracle

Formula rename(const Formula& f, const std::vector<unsigned>& map) {
  switch (f.kind()) {
    case Connective::var: return Formula::var(map.at(f.index() - 1));
    case Connective::neg: return Formula::neg(rename(f.left(), map));
    default: return Formula::binary(f.kind(), rename(f.left(), map), rename(f.right(), map));
  }
}

}  // namespace luka::testing
