#include <doctest.h>

#include "luka/formula.hpp"
#include "luka/pl_function.hpp"
#include "support.hpp"

using namespace luka;

namespace {

Formula x(unsigned i) { return Formula::var(i); }

}  // namespace

TEST_CASE("parse follows the stated precedence and associativity") {
  CHECK(parse("!(X1 * X1)") == Formula::neg(Formula::otimes(x(1), x(1))));
  CHECK(parse("X1 -> X2 -> X3") == Formula::impl(x(1), Formula::impl(x(2), x(3))));
  CHECK(parse("X1 + X1 & X2") == Formula::min(Formula::oplus(x(1), x(1)), x(2)));
  CHECK(parse("X1 | X2 & X3") == Formula::max(x(1), Formula::min(x(2), x(3))));
  CHECK(parse("X1 * X2 + X3") == Formula::oplus(Formula::otimes(x(1), x(2)), x(3)));
  CHECK(parse("X1 * X2 * X3") == Formula::otimes(Formula::otimes(x(1), x(2)), x(3)));
  CHECK(parse("!!X2") == Formula::neg(Formula::neg(x(2))));
  CHECK(parse("  X12\t") == x(12));
}

TEST_CASE("k.F abbreviates k-fold truncated sum") {
  CHECK(parse("1.X1") == x(1));
  CHECK(parse("3.X1") == Formula::oplus(Formula::oplus(x(1), x(1)), x(1)));
  CHECK(parse("2.!X1 * X2") == Formula::otimes(Formula::oplus(Formula::neg(x(1)), Formula::neg(x(1))), x(2)));
}

TEST_CASE("malformed input is rejected with a position") {
  CHECK_THROWS_AS(parse("X0"), ParseError);
  CHECK_THROWS_AS(parse("X1 ->"), ParseError);
  CHECK_THROWS_AS(parse("(X1"), ParseError);
  CHECK_THROWS_AS(parse("X1 X2"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("0.X1"), ParseError);
  CHECK_THROWS_AS(parse("Y1"), ParseError);
  try {
    parse("X1 -> ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(Formula::var(0), InputError);
}

TEST_CASE("variables_of lists exactly the occurring indices") {
  CHECK(variables_of(Formula::neg(x(3))) == VariableSet{3});
  CHECK(variables_of(Formula::impl(x(1), x(1))) == VariableSet{1});
  CHECK(variables_of(Formula::oplus(x(1), x(2))) == VariableSet{1, 2});
  CHECK(max_variable(parse("X2 -> X7")) == 7);
}

TEST_CASE("expand_derived uses only negation and implication") {
  CHECK(expand_derived(Formula::oplus(x(1), x(2))) == Formula::impl(Formula::neg(x(1)), x(2)));
  CHECK(expand_derived(x(1)) == x(1));
  CHECK(expand_derived(Formula::otimes(x(1), x(1))) == Formula::neg(Formula::impl(x(1), Formula::neg(x(1)))));
  CHECK(expand_derived(Formula::max(x(1), x(2))) == Formula::impl(Formula::impl(x(1), x(2)), x(2)));
}

TEST_CASE("to_text round-trips through parse") {
  testing::Gen gen(11);
  for (int i = 0; i < 400; ++i) {
    const Formula f = gen.formula(3, static_cast<int>(gen.uniform(0, 25)));
    CAPTURE(to_text(f));
    CHECK(parse(to_text(f)) == f);
  }
  CHECK(to_text(parse("!(X1 * X1)")) == "!(X1 * X1)");
  CHECK(to_text(parse("(X1 -> X2) -> X3")) == "(X1 -> X2) -> X3");
}

namespace {

bool only_neg_impl(const Formula& f) {
  switch (f.kind()) {
    case Connective::var: return true;
    case Connective::neg: return only_neg_impl(f.left());
    case Connective::impl: return only_neg_impl(f.left()) && only_neg_impl(f.right());
    default: return false;
  }
}

}  // namespace

TEST_CASE("expand_derived is idempotent and semantics-preserving") {
  testing::Gen gen(12);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = static_cast<std::size_t>(gen.uniform(1, 3));
    const Formula f = gen.formula(n, static_cast<int>(gen.uniform(0, 12)));
    const Formula e = expand_derived(f);
    CAPTURE(to_text(f));
    CHECK(only_neg_impl(e));
    CHECK(expand_derived(e) == e);
    CHECK(variables_of(e) == variables_of(f));
    const PLFunction F = compile(f, n);
    const PLFunction E = compile(e, n);
    for (int k = 0; k < 20; ++k) {
      const Point v = gen.point(n, 16);
      CHECK(eval_pl(F, v) == eval_pl(E, v));
      CHECK(testing::oracle::eval(e, v) == testing::oracle::eval(f, v));
    }
  }
}

TEST_CASE("connective_count counts every occurrence") {
  CHECK(connective_count(parse("X1")) == 0);
  CHECK(connective_count(parse("!(X1 * X1)")) == 2);
  CHECK(connective_count(parse("3.X1")) == 2);
}
