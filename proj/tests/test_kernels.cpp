#include <doctest.h>

#include "luka/kernels.hpp"
#include "support.hpp"

using namespace luka;

namespace {

bool same_cells(const std::vector<Cell>& a, const std::vector<Cell>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].region.constraints() != b[i].region.constraints() || !(a[i].piece == b[i].piece)) return false;
    if (a[i].box.lo != b[i].box.lo || a[i].box.hi != b[i].box.hi) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference exactly") {
  using kernels::Combine;
  testing::Gen gen(41);
  INFO("threads: " << kernels::max_threads());
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(1, 3));
    const PLFunction F = compile(gen.formula(n, static_cast<int>(gen.uniform(0, 8))), n);
    const PLFunction G = compile(gen.formula(n, static_cast<int>(gen.uniform(0, 8))), n);
    for (const Combine op : {Combine::oplus, Combine::otimes, Combine::impl, Combine::max, Combine::min}) {
      CHECK(same_cells(kernels::overlay(F.cells(), G.cells(), op), kernels::serial::overlay(F.cells(), G.cells(), op)));
    }
    CHECK(same_cells(kernels::overlay(F.cells(), F.cells(), Combine::oplus, true),
                     kernels::serial::overlay(F.cells(), F.cells(), Combine::oplus, true)));

    std::vector<Point> pts;
    for (int k = 0; k < 64; ++k) pts.push_back(gen.point(n, 32));
    CHECK(kernels::eval_batch(F, pts) == kernels::serial::eval_batch(F, pts));

    const auto a = one_set(F).members;
    const auto b = one_set(G).members;
    const auto par = kernels::intersect_members(a, b);
    const auto ser = kernels::serial::intersect_members(a, b);
    REQUIRE(par.size() == ser.size());
    for (std::size_t k = 0; k < par.size(); ++k) CHECK(par[k].constraints() == ser[k].constraints());

    const std::vector<Polyhedron> region{gen.polyhedron(n, 2), gen.polyhedron(n, 3)};
    const auto mp = kernels::min_over_members(G, region);
    const auto ms = kernels::serial::min_over_members(G, region);
    REQUIRE(mp.has_value() == ms.has_value());
    if (mp) {
      CHECK(mp->value == ms->value);
      CHECK(mp->argmin == ms->argmin);
    }
  }
}

TEST_CASE("eval_batch matches pointwise evaluation") {
  testing::Gen gen(42);
  const Formula f = gen.formula(2, 12);
  const PLFunction F = compile(f, 2);
  std::vector<Point> pts;
  for (int k = 0; k < 200; ++k) pts.push_back(gen.point(2, 64));
  const auto vals = kernels::eval_batch(F, pts);
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK(vals[k] == testing::oracle::eval(f, pts[k]));
}
