#include <doctest.h>

#include "luka/geometry.hpp"
#include "luka/linalg.hpp"
#include "support.hpp"

using namespace luka;

namespace {

Rat q(long p, long d = 1) {
  Rat r(p, d);
  r.canonicalize();
  return r;
}

AffineFn aff(std::initializer_list<long> c) {
  Point co;
  auto it = c.begin();
  const Rat c0(*it++);
  for (; it != c.end(); ++it) co.push_back(Rat(*it));
  return AffineFn(c0, co);
}

}  // namespace

TEST_CASE("rationals serialize canonically") {
  CHECK(to_string(parse_rat("2/4")) == "1/2");
  CHECK(to_string(parse_rat("-3")) == "-3");
  CHECK(to_string(parse_rat("+6/-4")) == "-3/2");
  CHECK_THROWS_AS(parse_rat("1/0"), InputError);
  CHECK_THROWS_AS(parse_rat("x"), InputError);
  CHECK(parse_point("1/2, 3/4") == Point{q(1, 2), q(3, 4)});
  CHECK(parse_point("1/2 3/4") == Point{q(1, 2), q(3, 4)});
  CHECK(format_point(Point{q(1, 2), q(0), q(3, 4)}) == "1/2,0,3/4");
}

TEST_CASE("lp_min examples") {
  const auto sq = lp_min(aff({0, 1, 1}), Polyhedron::cube(2));
  REQUIRE(sq.optimal());
  CHECK(sq.value == 0);
  CHECK(sq.argmin == Point{q(0), q(0)});

  Polyhedron half = Polyhedron::cube(1);
  half.add(AffineFn(q(-1, 2), Point{q(1)}));
  const auto r = lp_min(aff({2, -2}), half);
  REQUIRE(r.optimal());
  CHECK(r.value == 0);
  CHECK(r.argmin == Point{q(1)});

  const Polyhedron empty(1, {aff({-1, 1}), aff({0, -1})});
  CHECK(lp_min(aff({0, 1}), empty).status == LpStatus::infeasible);
  CHECK(is_empty(empty));

  const Polyhedron ray(1, {aff({0, 1})});
  CHECK(lp_min(aff({0, -1}), ray).status == LpStatus::unbounded);

  CHECK_THROWS_AS(lp_min(aff({0, 1}), Polyhedron::cube(2)), DimensionError);
}

TEST_CASE("lp_min agrees with the exact simplex and with vertex enumeration") {
  testing::Gen gen(21);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(1, 3));
    Polyhedron p = Polyhedron::cube(n);
    for (long k = gen.uniform(0, 4); k > 0; --k) p.add(AffineFn(Rat(gen.uniform(-3, 3)), gen.int_vector(n, 4)));
    const AffineFn obj(gen.unit_rat(5), gen.int_vector(n, 5));
    const auto fast = lp_min(obj, p);
    const auto exact = lp_min_exact(obj, p);
    const auto brute = testing::oracle::lp_min(obj, p);
    REQUIRE(fast.status == exact.status);
    REQUIRE(fast.optimal() == brute.has_value());
    CHECK(is_empty(p) == !brute.has_value());
    if (!fast.optimal()) continue;
    CHECK(fast.value == *brute);
    CHECK(exact.value == *brute);
    CHECK(obj(fast.argmin) == fast.value);
    CHECK(contains(p, fast.argmin));
    CHECK(contains(p, exact.argmin));
    const auto up = lp_max(obj, p);
    REQUIRE(up.optimal());
    CHECK(-up.value == *testing::oracle::lp_min(-obj, p));
  }
}

TEST_CASE("contains uses closed half-spaces") {
  const Polyhedron sq = Polyhedron::cube(2);
  CHECK(contains(sq, Point{q(1, 2), q(1, 2)}));
  CHECK_FALSE(contains(sq, Point{q(2), q(0)}));
  const Polyhedron ge(1, {AffineFn(q(-1, 2), Point{q(1)})});
  CHECK(contains(ge, Point{q(1, 2)}));
  CHECK_THROWS_AS(contains(sq, Point{q(0)}), DimensionError);
}

TEST_CASE("full-dimensionality and boxes") {
  Polyhedron seg = Polyhedron::cube(2);
  seg.add(aff({0, 1, -1}));
  seg.add(aff({0, -1, 1}));
  CHECK_FALSE(is_empty(seg));
  CHECK_FALSE(is_full_dimensional(seg));
  CHECK(is_full_dimensional(Polyhedron::cube(3)));
  Polyhedron tri = Polyhedron::cube(2);
  tri.add(aff({1, -1, -1}));
  const auto box = bounding_box(tri);
  REQUIRE(box);
  CHECK(box->lo == Point{q(0), q(0)});
  CHECK(box->hi == Point{q(1), q(1)});
  auto vs = vertices(tri);
  std::sort(vs.begin(), vs.end());
  CHECK(vs == std::vector<Point>{{q(0), q(0)}, {q(0), q(1)}, {q(1), q(0)}});
  CHECK(is_subset(tri, Polyhedron::cube(2)));
  CHECK_FALSE(is_subset(Polyhedron::cube(2), tri));
}

TEST_CASE("flag_simplex examples") {
  const DifferentialValuation u1{{q(1, 2)}, {{q(1)}}};
  CHECK(flag_simplex(u1, 4).vertices == std::vector<Point>{{q(1, 2)}, {q(3, 4)}});
  const DifferentialValuation u2{{q(0), q(0)}, {{q(1), q(0)}, {q(0), q(1)}}};
  CHECK(flag_simplex(u2, 2).vertices == std::vector<Point>{{q(0), q(0)}, {q(1, 2), q(0)}, {q(1, 2), q(1, 4)}});
  const DifferentialValuation u0{{q(1, 3)}, {}};
  CHECK(flag_simplex(u0, 7).vertices == std::vector<Point>{{q(1, 3)}});
}

TEST_CASE("lex_sign examples") {
  const AffineFn h(q(-1, 2), Point{q(1)});
  CHECK(lex_sign(h, DifferentialValuation{{q(1, 2)}, {{q(1)}}}) == 1);
  CHECK(lex_sign(h, DifferentialValuation{{q(1, 2)}, {{q(-1)}}}) == -1);
  CHECK(lex_sign(AffineFn(1), DifferentialValuation{{q(1, 5)}, {{q(1)}}}) == 0);
  CHECK(lex_sequence(h, DifferentialValuation{{q(1, 2)}, {{q(1)}}}) == std::vector<Rat>{q(0), q(1)});
}

TEST_CASE("lex_sign is the sign at the last vertex from the threshold on") {
  testing::Gen gen(22);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(1, 3));
    const auto u = gen.valuation(n, n);
    AffineFn h(Rat(gen.uniform(-2, 2)), gen.int_vector(n, 3));
    // Put the hyperplane through the base point half the time.
    if (gen.coin()) h = AffineFn(-h.slope(u.base), h.coefficients());
    const Rat m = lex_threshold(h, u);
    const int s = lex_sign(h, u);
    for (const Rat& mm : {m, Rat(2 * m), Rat(m + 1)}) {
      const auto last = testing::oracle::simplex(u, mm).back();
      CHECK(sgn(h(last)) == s);
    }
  }
}

TEST_CASE("simplices are nested") {
  testing::Gen gen(23);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(1, 3));
    const auto u = gen.valuation(n, n);
    for (int m = 1; m <= 6; ++m) {
      const auto outer = flag_simplex(u, m).vertices;
      CHECK(outer == testing::oracle::simplex(u, m));
      for (const auto& v : flag_simplex(u, m + 1).vertices) CHECK(in_convex_hull(v, outer));
    }
  }
  // And not the other way round.
  const DifferentialValuation u{{q(0)}, {{q(1)}}};
  CHECK_FALSE(in_convex_hull(Point{q(1)}, flag_simplex(u, 2).vertices));
}

TEST_CASE("feasible direction generators") {
  const Polyhedron sq = Polyhedron::cube(2);
  CHECK(feasible_direction_generators(sq, Point{q(0), q(0)}) == std::vector<Point>{{q(1), q(0)}, {q(0), q(1)}});
  Polyhedron half = Polyhedron::cube(1);
  half.add(AffineFn(q(1, 2), Point{q(-1)}));
  CHECK(feasible_direction_generators(half, Point{q(1, 2)}) == std::vector<Point>{{q(-1)}});
  auto interior = feasible_direction_generators(sq, Point{q(1, 2), q(1, 2)});
  std::sort(interior.begin(), interior.end());
  CHECK(interior == std::vector<Point>{{q(-1), q(0)}, {q(0), q(-1)}, {q(0), q(1)}, {q(1), q(0)}});
}

TEST_CASE("linear algebra helpers") {
  CHECK(primitive(Point{q(2, 3), q(-4, 9)}) == Point{q(3), q(-2)});
  CHECK(primitive(Point{q(0), q(-5)}) == Point{q(0), q(-1)});
  const auto gs = gram_schmidt({{q(1), q(1)}, {q(2), q(2)}, {q(1), q(0)}});
  REQUIRE(gs.size() == 2);
  CHECK(dot(gs[0], gs[1]) == 0);
  CHECK(rank({{q(1), q(2)}, {q(2), q(4)}}) == 1);
  const auto x = solve({{q(2), q(1)}, {q(1), q(3)}}, {q(3), q(4)});
  REQUIRE(x);
  CHECK(*x == Point{q(1), q(1)});
  CHECK_FALSE(solve({{q(1), q(2)}, {q(2), q(4)}}, {q(1), q(1)}));
}
