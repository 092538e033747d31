#include <doctest.h>

#include "mcalg/errors.hpp"
#include "mcalg/parser.hpp"
#include "mcalg/rng.hpp"
#include "support/generators.hpp"

using namespace mcalg;
using mcalg::testsupport::random_term;

TEST_CASE("grammar instances") {
  CHECK(parse_term("oplus(var(0), const(1/2))") ==
        Term::oplus(Term::var(0), Term::constant(Unit::of(1, 2))));
  CHECK(parse_term("delta(ominus_dyadic(var(0)))") ==
        Term::delta(SequenceSpec::ominus_dyadic(Term::var(0))));
  CHECK(parse_term("ominus(var(1), 3/4)") == Term::ominus(Term::var(1), Unit::of(3, 4)));
  CHECK(parse_term("delta(explicit[const(0), const(0); tail=const(1)])") ==
        Term::delta(SequenceSpec::explicit_then_constant(
            {Term::constant(Unit::zero()), Term::constant(Unit::zero())},
            Term::constant(Unit::one()))));
}

TEST_CASE("whitespace is insignificant") {
  CHECK(parse_term("  meet( var(0) ,\n\tconst( 2/4 ) )  ") ==
        Term::meet(Term::var(0), Term::constant(Unit::of(1, 2))));
}

TEST_CASE("constants out of range are rejected") {
  CHECK_THROWS_AS(parse_term("const(5/4)"), RangeError);
  CHECK_THROWS_AS(parse_term("ominus(var(0), 9/8)"), RangeError);
}

TEST_CASE("syntax errors carry a position") {
  CHECK_THROWS_AS(parse_term("oplus(var(0)"), ParseError);
  CHECK_THROWS_AS(parse_term("frob(var(0), var(1))"), ParseError);
  CHECK_THROWS_AS(parse_term("const(1/2) trailing"), ParseError);
  CHECK_THROWS_AS(parse_term("var(1/2)"), ParseError);
  CHECK_THROWS_AS(parse_term("delta(explicit[const(0)])"), ParseError);
  try {
    parse_term("join(var(0), ?)");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 13);
  }
}

TEST_CASE("rendering examples") {
  CHECK(render_term(Term::constant(Unit::one())) == "const(1)");
  CHECK(render_term(Term::meet(Term::var(0), Term::var(1))) == "meet(var(0), var(1))");
  CHECK(render_term(Term::delta(SequenceSpec::constant_seq(Term::constant(Unit::of(1, 3))))) ==
        "delta(constant(const(1/3)))");
}

TEST_CASE("generator specs have no textual form") {
  Term t = Term::delta(
      SequenceSpec::generator([](std::size_t) { return Term::constant(Unit::zero()); }));
  CHECK_THROWS_AS(render_term(t), NotSupportedError);
}

TEST_CASE("parse after render is the identity on 1000 random terms") {
  Rng rng(101);
  for (int round = 0; round < 1000; ++round) {
    Term t = random_term(rng, 4, 4);
    CHECK(parse_term(render_term(t)) == t);
  }
}

TEST_CASE("garbage input fails with an error, never silently") {
  Rng rng(103);
  const char alphabet[] = "abcdefxyz()[],;=/0123456789 \t";
  for (int round = 0; round < 500; ++round) {
    std::string text;
    std::size_t len = rng.below(24);
    for (std::size_t i = 0; i < len; ++i) {
      text.push_back(alphabet[rng.below(sizeof(alphabet) - 1)]);
    }
    try {
      Term t = parse_term(text);
      CHECK(render_term(t).size() > 0);  // the rare accidental hit must be well-formed
    } catch (const ParseError&) {
    } catch (const RangeError&) {
    }
  }
}
