#include "luka/tangent.hpp"

#include <algorithm>

#include "luka/geometry.hpp"

namespace luka {

std::size_t dim_of(const ClosedSetDescription& x) {
  if (const auto* r = std::get_if<RegionUnion>(&x)) return r->dim;
  return std::get<PointSequence>(x).limit.size();
}

bool cone_contains(std::span<const Rat> x, std::span<const Rat> u, unsigned m, std::span<const Rat> y) {
  if (m == 0) throw InputError("cone index m must be positive");
  if (is_zero(u)) throw InputError("cone axis must be nonzero");
  if (x.size() != u.size() || y.size() != u.size()) throw DimensionError("cone_contains: dimension mismatch");
  const Point d = sub(y, x);
  const Rat uu = dot(u, u);
  const Rat a = dot(d, u) / uu;
  if (a <= 0) return false;
  const Rat mm = Rat(m) * m;
  if (dot(d, d) * mm > 1) return false;
  const Point off = sub(d, scale(u, a));
  // |off|^2 <= (1/m^2)^2 a^2 |u|^2
  return dot(off, off) * mm * mm <= a * a * uu;
}

TangentReport certify_tangent_sequence(const ClosedSetDescription& x, std::span<const Rat> u, unsigned max_m) {
  const auto* seq = std::get_if<PointSequence>(&x);
  if (!seq) throw InputError("tangent certification needs a point sequence; use the polyhedral tangent cone instead");
  if (u.size() != seq->limit.size()) throw DimensionError("direction dimension does not match the sequence");
  if (is_zero(u)) throw InputError("direction must be nonzero");
  TangentReport rep;
  rep.bound = max_m;
  rep.verdict = TangentVerdict::certified;
  for (unsigned m = 1; m <= max_m; ++m) {
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < seq->points.size() && !hit; ++i) {
      if (cone_contains(seq->limit, u, m, seq->points[i])) hit = i;
    }
    if (!hit) {
      rep.verdict = TangentVerdict::refuted;
      rep.refuted_at = m;
      rep.caveat = "refutation is relative to the " + std::to_string(seq->points.size()) + " listed points";
      return rep;
    }
    rep.evidence.push_back(ConeEvidence{m, *hit});
  }
  return rep;
}

namespace {

void check_ray(std::span<const Rat> x, std::span<const Rat> u, std::size_t n) {
  if (x.size() != n || u.size() != n) throw DimensionError("point or direction dimension does not match the set");
  if (is_zero(u)) throw InputError("direction must be nonzero");
}

// The parameters s in [0, hi] with x + s u in P, as a closed interval.
std::optional<std::pair<Rat, Rat>> ray_interval(const Polyhedron& p, std::span<const Rat> x, std::span<const Rat> u,
                                                const Rat& hi) {
  Polyhedron line(1);
  for (const auto& h : p.constraints()) line.add(AffineFn(h(x), Point{h.slope(u)}));
  line.add(AffineFn::coordinate(1, 0));
  line.add(AffineFn(hi, Point{Rat(-1)}));
  const auto lo = lp_min(AffineFn::coordinate(1, 0), line);
  if (!lo.optimal()) return std::nullopt;
  const auto up = lp_max(AffineFn::coordinate(1, 0), line);
  return std::make_pair(lo.value, up.value);
}

// Parameter s > 0 with y = x + s u, if y lies on the ray.
std::optional<Rat> ray_parameter(std::span<const Rat> x, std::span<const Rat> u, std::span<const Rat> y) {
  const Point d = sub(y, x);
  const Rat s = dot(d, u) / dot(u, u);
  if (s <= 0 || sub(d, scale(u, s)) != zeros(d.size())) return std::nullopt;
  return s;
}

Rat cube_exit(std::span<const Rat> x, std::span<const Rat> u) {
  Rat s = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (u[i] > 0) s = std::min(s, Rat((1 - x[i]) / u[i]));
    if (u[i] < 0) s = std::min(s, Rat(x[i] / -u[i]));
  }
  return s;
}

}  // namespace

TangentReport certify_tangent(const ClosedSetDescription& x_set, std::span<const Rat> x, std::span<const Rat> u,
                              unsigned max_m) {
  check_ray(x, u, dim_of(x_set));
  if (const auto* seq = std::get_if<PointSequence>(&x_set)) {
    if (Point(x.begin(), x.end()) != seq->limit) {
      TangentReport rep;
      rep.bound = max_m;
      rep.caveat = "the listed points accumulate only at " + format_point(seq->limit);
      return rep;
    }
    return certify_tangent_sequence(x_set, u, max_m);
  }
  const auto& r = std::get<RegionUnion>(x_set);
  bool member = false;
  TangentReport rep;
  rep.bound = max_m;
  rep.verdict = TangentVerdict::refuted;
  rep.caveat = "exact for a polyhedral set";
  for (const auto& p : r.members) {
    if (!contains(p, x)) continue;
    member = true;
    const auto iv = ray_interval(p, x, u, Rat(1));
    if (iv && iv->second > 0) rep.verdict = TangentVerdict::certified;
  }
  if (!member) throw InputError("point " + format_point(x) + " does not belong to the set");
  return rep;
}

bool certify_outgoing(const ClosedSetDescription& set, std::span<const Rat> x, std::span<const Rat> u, const Rat& lambda) {
  check_ray(x, u, dim_of(set));
  if (lambda <= 0) throw InputError("lambda must be positive");
  for (const auto& c : x) {
    if (c < 0 || c > 1) throw InputError("point " + format_point(x) + " lies outside the cube");
  }
  if (lambda > cube_exit(x, u)) throw InputError("x + lambda u leaves the cube");
  if (const auto* r = std::get_if<RegionUnion>(&set)) {
    const Point v = scale(u, lambda);
    for (const auto& p : r->members) {
      const auto iv = ray_interval(p, x, v, Rat(1));
      // Misses the open segment iff empty, or only s = 0, or only s = 1.
      if (iv && iv->first < 1 && iv->second > 0) return false;
    }
    return true;
  }
  const auto& seq = std::get<PointSequence>(set);
  auto on_open_segment = [&](const Point& y) {
    const auto s = ray_parameter(x, u, y);
    return s && *s < lambda;
  };
  if (on_open_segment(seq.limit)) return false;
  return std::none_of(seq.points.begin(), seq.points.end(), on_open_segment);
}

Rat default_lambda(const ClosedSetDescription& set, std::span<const Rat> x, std::span<const Rat> u) {
  check_ray(x, u, dim_of(set));
  Rat lambda = cube_exit(x, u);
  if (lambda <= 0) throw InputError("direction " + format_point(u) + " leaves the cube immediately at " + format_point(x));
  if (const auto* r = std::get_if<RegionUnion>(&set)) {
    for (const auto& p : r->members) {
      const auto iv = ray_interval(p, x, u, lambda);
      if (iv && iv->first > 0) lambda = std::min(lambda, iv->first);
    }
    return lambda;
  }
  const auto& seq = std::get<PointSequence>(set);
  auto shrink = [&](const Point& y) {
    if (const auto s = ray_parameter(x, u, y)) lambda = std::min(lambda, *s);
  };
  shrink(seq.limit);
  for (const auto& y : seq.points) shrink(y);
  return lambda;
}

std::vector<Point> tangent_cone_polyhedral(const RegionUnion& x_set, std::span<const Rat> x) {
  if (x.size() != x_set.dim) throw DimensionError("point dimension does not match the set");
  std::vector<Point> gens;
  bool found = false;
  for (const auto& p : x_set.members) {
    if (!contains(p, x)) continue;
    found = true;
    for (auto& g : feasible_direction_generators(p, x)) {
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(std::move(g));
    }
  }
  if (!found) throw InputError("point " + format_point(x) + " does not belong to the set");
  std::sort(gens.begin(), gens.end(), std::greater<>());
  return gens;
}

SssReport sss_check(const ClosedSetDescription& set, const std::vector<Candidate>& candidates, unsigned max_m,
                    std::optional<Rat> lambda) {
  SssReport rep;
  rep.bound = max_m;
  rep.heuristic = dim_of(set) != 2;
  if (std::holds_alternative<RegionUnion>(set)) {
    rep.verdict = SssVerdict::strongly_semisimple;
    rep.justification = "polyhedral set: every tangent at a point of the set points into one of its members, "
                        "so none is outgoing";
    return rep;
  }
  const auto& seq = std::get<PointSequence>(set);
  for (const auto& c : candidates) {
    CandidateResult res{c, {}, false, Rat(0)};
    if (c.point != seq.limit) {
      res.tangent.caveat = "the listed points accumulate only at " + format_point(seq.limit);
    } else {
      res.tangent = certify_tangent_sequence(set, c.dir, max_m);
      res.lambda = lambda ? *lambda : default_lambda(set, c.point, c.dir);
      res.outgoing = certify_outgoing(set, c.point, c.dir, res.lambda);
    }
    const bool witness = res.tangent.verdict == TangentVerdict::certified && res.outgoing;
    rep.results.push_back(std::move(res));
    if (witness) {
      rep.verdict = SssVerdict::not_strongly_semisimple_witnessed;
      rep.justification = "an outgoing rational tangent is certified at a rational point of the set";
    }
  }
  if (rep.verdict == SssVerdict::no_witness_found) {
    rep.justification = "no candidate is both a tangent up to m = " + std::to_string(max_m) + " and outgoing";
  }
  return rep;
}

std::string to_string(TangentVerdict v) {
  switch (v) {
    case TangentVerdict::certified: return "certified";
    case TangentVerdict::refuted: return "refuted";
    case TangentVerdict::not_applicable: return "not-applicable";
  }
  return "";
}

std::string to_string(SssVerdict v) {
  switch (v) {
    case SssVerdict::strongly_semisimple: return "strongly-semisimple";
    case SssVerdict::not_strongly_semisimple_witnessed: return "not-strongly-semisimple-witnessed";
    case SssVerdict::no_witness_found: return "no-witness-found";
  }
  return "";
}

}  // namespace luka
