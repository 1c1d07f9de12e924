#include <doctest.h>

#include "luka/tangent.hpp"
#include "support.hpp"

using namespace luka;

namespace {

Rat q(long p, long d = 1) {
  Rat r(p, d);
  r.canonicalize();
  return r;
}

Point p2(const Rat& a, const Rat& b) { return Point{a, b}; }

PointSequence parabola(long count) {
  PointSequence s;
  s.limit = p2(q(0), q(0));
  for (long i = 1; i <= count; ++i) s.points.push_back(p2(q(1, i), q(1, i * i)));
  return s;
}

RegionUnion square() { return RegionUnion{2, {Polyhedron::cube(2)}}; }

RegionUnion left_edge() {
  Polyhedron p = Polyhedron::cube(2);
  p.add(AffineFn(q(0), Point{q(-1), q(0)}));
  return RegionUnion{2, {p}};
}

}  // namespace

TEST_CASE("cone_contains examples") {
  const Point o = p2(q(0), q(0));
  const Point e1 = p2(q(1), q(0));
  CHECK(cone_contains(o, e1, 2, p2(q(1, 8), q(1, 512))));
  CHECK_FALSE(cone_contains(o, e1, 2, p2(q(1, 8), q(1, 8))));
  CHECK_FALSE(cone_contains(o, e1, 2, o));
  CHECK_FALSE(cone_contains(o, e1, 2, p2(q(-1, 8), q(0))));
  CHECK_FALSE(cone_contains(o, e1, 2, p2(q(3, 4), q(0))));  // beyond the height
  CHECK(cone_contains(o, e1, 2, p2(q(1, 2), q(0))));         // on the base disk
  CHECK_THROWS_AS(cone_contains(o, p2(q(0), q(0)), 2, e1), InputError);
  CHECK_THROWS_AS(cone_contains(o, e1, 0, e1), InputError);
}

TEST_CASE("certify_tangent_sequence examples") {
  const ClosedSetDescription x = parabola(200);
  const auto yes = certify_tangent_sequence(x, p2(q(1), q(0)), 10);
  CHECK(yes.verdict == TangentVerdict::certified);
  REQUIRE(yes.evidence.size() == 10);
  for (const auto& e : yes.evidence) {
    CHECK(cone_contains(p2(q(0), q(0)), p2(q(1), q(0)), e.m, std::get<PointSequence>(x).points[e.index]));
  }
  const auto no = certify_tangent_sequence(x, p2(q(0), q(1)), 3);
  CHECK(no.verdict == TangentVerdict::refuted);
  CHECK(no.refuted_at == 1);
  CHECK_FALSE(no.caveat.empty());

  PointSequence single;
  single.limit = p2(q(0), q(0));
  single.points.push_back(p2(q(3, 4), q(0)));
  const auto one = certify_tangent_sequence(ClosedSetDescription{single}, p2(q(1), q(0)), 2);
  CHECK(one.verdict == TangentVerdict::refuted);
  CHECK(one.refuted_at == 2);

  CHECK_THROWS_AS(certify_tangent_sequence(square(), p2(q(1), q(0)), 2), InputError);
}

TEST_CASE("certify_outgoing examples") {
  const Point o = p2(q(0), q(0));
  const Point e1 = p2(q(1), q(0));
  CHECK(certify_outgoing(parabola(200), o, e1, q(1, 2)));
  CHECK_FALSE(certify_outgoing(square(), o, e1, q(1, 2)));
  CHECK(certify_outgoing(left_edge(), o, e1, q(1, 2)));
  CHECK_FALSE(certify_outgoing(left_edge(), o, p2(q(0), q(1)), q(1, 2)));
  // A segment that touches the set only at its far end is still outgoing.
  Polyhedron far = Polyhedron::cube(2);
  far.add(AffineFn(q(-1, 2), Point{q(1), q(0)}));
  CHECK(certify_outgoing(RegionUnion{2, {far}}, o, e1, q(1, 2)));
  CHECK_FALSE(certify_outgoing(RegionUnion{2, {far}}, o, e1, q(3, 4)));
  // A listed point on the open segment blocks it.
  PointSequence s = parabola(5);
  s.points.push_back(p2(q(1, 4), q(0)));
  CHECK_FALSE(certify_outgoing(ClosedSetDescription{s}, o, e1, q(1, 2)));
  CHECK(certify_outgoing(ClosedSetDescription{s}, o, e1, q(1, 4)));
  CHECK_THROWS_AS(certify_outgoing(square(), o, e1, q(2)), InputError);
  CHECK_THROWS_AS(certify_outgoing(square(), o, e1, q(0)), InputError);
}

TEST_CASE("default_lambda stops at the first contact") {
  Polyhedron far = Polyhedron::cube(2);
  far.add(AffineFn(q(-1, 2), Point{q(1), q(0)}));
  const ClosedSetDescription x = RegionUnion{2, {far}};
  CHECK(default_lambda(x, p2(q(0), q(0)), p2(q(1), q(0))) == q(1, 2));
  CHECK(default_lambda(square(), p2(q(1, 2), q(0)), p2(q(2), q(1))) == q(1, 4));
  PointSequence s = parabola(3);
  s.points.push_back(p2(q(1, 8), q(0)));
  CHECK(default_lambda(ClosedSetDescription{s}, p2(q(0), q(0)), p2(q(1), q(0))) == q(1, 8));
  CHECK_THROWS_AS(default_lambda(square(), p2(q(1), q(0)), p2(q(1), q(0))), InputError);
}

TEST_CASE("tangent_cone_polyhedral examples") {
  CHECK(tangent_cone_polyhedral(square(), p2(q(0), q(0))) == std::vector<Point>{p2(q(1), q(0)), p2(q(0), q(1))});
  Polyhedron half = Polyhedron::cube(1);
  half.add(AffineFn(q(1, 2), Point{q(-1)}));
  CHECK(tangent_cone_polyhedral(RegionUnion{1, {half}}, Point{q(1, 2)}) == std::vector<Point>{{q(-1)}});
  auto all = tangent_cone_polyhedral(square(), p2(q(1, 2), q(1, 2)));
  CHECK(all.size() == 4);
  CHECK_THROWS_AS(tangent_cone_polyhedral(RegionUnion{1, {half}}, Point{q(3, 4)}), InputError);
}

TEST_CASE("certify_tangent decides polyhedral sets exactly") {
  const auto yes = certify_tangent(left_edge(), p2(q(0), q(0)), p2(q(0), q(1)), 5);
  CHECK(yes.verdict == TangentVerdict::certified);
  const auto no = certify_tangent(left_edge(), p2(q(0), q(0)), p2(q(1), q(1)), 5);
  CHECK(no.verdict == TangentVerdict::refuted);
  const auto off = certify_tangent(parabola(20), p2(q(1), q(1)), p2(q(1), q(0)), 5);
  CHECK(off.verdict == TangentVerdict::not_applicable);
}

TEST_CASE("sss_check examples") {
  const Point o = p2(q(0), q(0));
  const auto w = sss_check(parabola(200), {Candidate{o, p2(q(1), q(0))}}, 10);
  CHECK(w.verdict == SssVerdict::not_strongly_semisimple_witnessed);
  CHECK_FALSE(w.heuristic);
  REQUIRE(w.results.size() == 1);
  CHECK(w.results[0].outgoing);
  const auto n = sss_check(parabola(200), {Candidate{o, p2(q(0), q(1))}}, 10);
  CHECK(n.verdict == SssVerdict::no_witness_found);
  const RegionUnion mod = models(Theory{{parse("!(X1 * X1 + X2 + X2)")}, {}}, 2);
  CHECK(sss_check(mod, {Candidate{o, p2(q(1), q(0))}}, 10).verdict == SssVerdict::strongly_semisimple);
  PointSequence line;
  line.limit = Point{q(0), q(0), q(0)};
  line.points.push_back(Point{q(1, 2), q(0), q(0)});
  CHECK(sss_check(ClosedSetDescription{line}, {}, 3).heuristic);
}

TEST_CASE("cones shrink with m and ignore the length of the axis") {
  testing::Gen gen(71);
  int inside = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(1, 3));
    const Point x = gen.point(n, 16);
    const Point u = gen.int_vector(n, 4);
    // Points near the axis so that both outcomes occur.
    Point y = add(x, scale(u, Rat(1, gen.uniform(1, 64))));
    for (auto& c : y) c += Rat(gen.uniform(-2, 2), gen.uniform(64, 4096));
    const unsigned m = static_cast<unsigned>(gen.uniform(1, 6));
    const bool c = cone_contains(x, u, m + 1, y);
    if (c) {
      ++inside;
      CHECK(cone_contains(x, u, m, y));
    }
    const Rat k(gen.uniform(1, 9), gen.uniform(1, 9));
    CHECK(cone_contains(x, scale(u, k), m, y) == cone_contains(x, u, m, y));
  }
  CHECK(inside > 50);
}

TEST_CASE("polyhedral sets have no outgoing tangents at their points") {
  testing::Gen gen(72);
  for (int i = 0; i < 40; ++i) {
    RegionUnion r{2, {}};
    for (long k = gen.uniform(1, 3); k > 0; --k) r.members.push_back(gen.polyhedron(2, 3));
    for (const auto& p : r.members) {
      for (const auto& v : vertices(p)) {
        for (const auto& u : tangent_cone_polyhedral(r, v)) {
          const Rat lam = default_lambda(r, v, u);
          for (const Rat& l : {lam, Rat(lam / 2), Rat(lam / 7)}) CHECK_FALSE(certify_outgoing(r, v, u, l));
          CHECK(certify_tangent(r, v, u, 3).verdict == TangentVerdict::certified);
        }
      }
    }
  }
}
