#include "luka/geometry.hpp"

#include <algorithm>
#include <functional>

#include "luka/linalg.hpp"

namespace luka {

Rat AffineFn::operator()(std::span<const Rat> x) const {
  if (x.size() != dim()) throw DimensionError("affine evaluation: dimension mismatch");
  Rat v = c0_;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (coeffs_[i] != 0) v += coeffs_[i] * x[i];
  }
  return v;
}

Rat AffineFn::slope(std::span<const Rat> u) const { return dot(coeffs_, u); }

AffineFn AffineFn::normalized() const {
  Point all;
  all.reserve(dim() + 1);
  all.push_back(c0_);
  all.insert(all.end(), coeffs_.begin(), coeffs_.end());
  Point p = primitive(all);
  Rat c = std::move(p.front());
  p.erase(p.begin());
  return AffineFn(std::move(c), std::move(p));
}

AffineFn& AffineFn::operator+=(const AffineFn& o) {
  if (o.dim() != dim()) throw DimensionError("affine sum: dimension mismatch");
  c0_ += o.c0_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

AffineFn& AffineFn::operator-=(const AffineFn& o) {
  if (o.dim() != dim()) throw DimensionError("affine difference: dimension mismatch");
  c0_ -= o.c0_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

AffineFn& AffineFn::operator*=(const Rat& k) {
  c0_ *= k;
  for (auto& c : coeffs_) c *= k;
  return *this;
}

Polyhedron::Polyhedron(std::size_t n, const std::vector<AffineFn>& constraints) : dim_(n) {
  for (const auto& h : constraints) add(h);
}

Polyhedron Polyhedron::cube(std::size_t n) {
  Polyhedron p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p.add(AffineFn::coordinate(n, i));
    p.add(AffineFn::constant(n, 1) - AffineFn::coordinate(n, i));
  }
  return p;
}

void Polyhedron::add(const AffineFn& h) {
  if (h.dim() != dim_) throw DimensionError("polyhedron constraint: dimension mismatch");
  if (h.is_constant()) {
    if (h.constant_term() >= 0) return;
    if (trivially_empty_) return;
    trivially_empty_ = true;
    constraints_.push_back(AffineFn::constant(dim_, -1));
    return;
  }
  AffineFn n = h.normalized();
  if (std::find(constraints_.begin(), constraints_.end(), n) == constraints_.end()) {
    constraints_.push_back(std::move(n));
  }
}

Polyhedron Polyhedron::intersect(const Polyhedron& other) const {
  if (other.dim_ != dim_) throw DimensionError("polyhedron intersection: dimension mismatch");
  Polyhedron r = *this;
  for (const auto& h : other.constraints_) {
    if (h.is_constant()) {
      r.add(h);
    } else if (std::find(r.constraints_.begin(), r.constraints_.end(), h) == r.constraints_.end()) {
      r.constraints_.push_back(h);  // already normalized
    }
  }
  if (other.trivially_empty_) r.trivially_empty_ = true;
  return r;
}

bool contains(const Polyhedron& region, std::span<const Rat> p) {
  if (p.size() != region.dim()) throw DimensionError("contains: dimension mismatch");
  for (const auto& h : region.constraints()) {
    if (h(p) < 0) return false;
  }
  return true;
}

std::optional<Box> bounding_box(const Polyhedron& region) {
  const std::size_t n = region.dim();
  Box box{Point(n), Point(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const auto lo = lp_min(AffineFn::coordinate(n, i), region);
    if (!lo.optimal()) return std::nullopt;
    const auto hi = lp_max(AffineFn::coordinate(n, i), region);
    if (!hi.optimal()) return std::nullopt;
    box.lo[i] = lo.value;
    box.hi[i] = hi.value;
  }
  return box;
}

std::vector<Point> vertices(const Polyhedron& region) {
  const std::size_t n = region.dim();
  const auto& cons = region.constraints();
  std::vector<Point> out;
  if (n == 0 || cons.size() < n || region.trivially_empty()) return out;
  std::vector<std::size_t> idx(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == n) {
      Matrix a;
      Point b;
      for (auto i : idx) {
        a.push_back(cons[i].coefficients());
        b.push_back(-cons[i].constant_term());
      }
      auto x = solve(std::move(a), std::move(b));
      if (x && contains(region, *x) && std::find(out.begin(), out.end(), *x) == out.end()) out.push_back(*x);
      return;
    }
    for (std::size_t i = start; i < cons.size(); ++i) {
      idx[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subset(const Polyhedron& p, const Polyhedron& q) {
  if (p.dim() != q.dim()) throw DimensionError("is_subset: dimension mismatch");
  for (const auto& h : q.constraints()) {
    const auto r = lp_min(h, p);
    if (r.status == LpStatus::infeasible) return true;
    if (!r.optimal() || r.value < 0) return false;
  }
  return true;
}

bool in_convex_hull(std::span<const Rat> p, const std::vector<Point>& points) {
  const std::size_t k = points.size();
  if (k == 0) return false;
  Polyhedron w(k);
  AffineFn total(Rat(-1), Point(k, Rat(1)));
  w.add(total);
  w.add(-total);
  for (std::size_t i = 0; i < k; ++i) w.add(AffineFn::coordinate(k, i));
  for (std::size_t c = 0; c < p.size(); ++c) {
    Point coeffs(k);
    for (std::size_t i = 0; i < k; ++i) {
      if (points[i].size() != p.size()) throw DimensionError("in_convex_hull: dimension mismatch");
      coeffs[i] = points[i][c];
    }
    AffineFn eq(-p[c], std::move(coeffs));
    w.add(eq);
    w.add(-eq);
  }
  return !is_empty(w);
}

std::vector<Point> feasible_direction_generators(const Polyhedron& region, std::span<const Rat> x) {
  const std::size_t n = region.dim();
  if (x.size() != n) throw DimensionError("feasible_direction_generators: dimension mismatch");
  Matrix active;
  for (const auto& h : region.constraints()) {
    if (!h.is_constant() && h(x) == 0) active.push_back(h.coefficients());
  }
  std::vector<Point> gens;
  auto push = [&](const Point& v) {
    Point p = primitive(v);
    if (std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(std::move(p));
  };
  auto feasible = [&](const Point& u) {
    for (const auto& a : active) {
      if (dot(a, u) < 0) return false;
    }
    return true;
  };

  const auto lineality = null_space(active, n);
  for (const auto& l : lineality) {
    push(l);
    push(scale(l, Rat(-1)));
  }
  if (lineality.size() < n) {
    const std::size_t k = n - lineality.size() - 1;  // tight rows needed for an extreme ray
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
      if (depth == k) {
        Matrix m = lineality;
        for (auto i : idx) m.push_back(active[i]);
        const auto ns = null_space(m, n);
        if (ns.size() != 1) return;
        for (const Point& cand : {ns.front(), scale(ns.front(), Rat(-1))}) {
          if (feasible(cand)) push(cand);
        }
        return;
      }
      for (std::size_t i = start; i < active.size(); ++i) {
        idx[depth] = i;
        rec(depth + 1, i + 1);
      }
    };
    rec(0, 0);
  }
  std::sort(gens.begin(), gens.end(), std::greater<>());
  return gens;
}

Simplex flag_simplex(const DifferentialValuation& u, const Rat& m) {
  if (m < 1) throw std::invalid_argument("flag_simplex: m must be >= 1");
  Simplex s;
  Point p = u.base;
  s.vertices.push_back(p);
  Rat step = 1;
  for (const auto& d : u.directions) {
    if (d.size() != p.size()) throw DimensionError("flag_simplex: direction dimension mismatch");
    step /= m;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += d[i] * step;
    s.vertices.push_back(p);
  }
  Matrix diffs;
  for (std::size_t i = 1; i < s.vertices.size(); ++i) diffs.push_back(sub(s.vertices[i], s.vertices[0]));
  s.degenerate = rank(diffs) != diffs.size();
  return s;
}

std::vector<Rat> lex_sequence(const AffineFn& h, const DifferentialValuation& u) {
  if (h.dim() != u.dim()) throw DimensionError("lex_sequence: dimension mismatch");
  std::vector<Rat> seq;
  seq.reserve(u.order() + 1);
  seq.push_back(h(u.base));
  for (const auto& d : u.directions) seq.push_back(h.slope(d));
  return seq;
}

int lex_sign(const AffineFn& h, const DifferentialValuation& u) {
  for (const auto& c : lex_sequence(h, u)) {
    if (c != 0) return sgn(c);
  }
  return 0;
}

Rat lex_threshold(const AffineFn& h, const DifferentialValuation& u) {
  const auto seq = lex_sequence(h, u);
  std::size_t j = 0;
  while (j < seq.size() && seq[j] == 0) ++j;
  if (j == seq.size()) return Rat(1);
  Rat tail = 0;
  for (std::size_t k = j + 1; k < seq.size(); ++k) tail += abs(seq[k]);
  return 1 + ceil(tail / abs(seq[j]));
}

std::string format_affine(const AffineFn& h) {
  std::string s = h.constant_term().get_str();
  for (const auto& c : h.coefficients()) {
    s += ' ';
    s += c.get_str();
  }
  return s;
}

}  // namespace luka
