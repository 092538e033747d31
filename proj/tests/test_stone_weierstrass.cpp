#include <doctest.h>

#include "mcalg/errors.hpp"
#include "mcalg/parser.hpp"
#include "mcalg/rng.hpp"
#include "mcalg/stone_weierstrass.hpp"
#include "support/generators.hpp"

using namespace mcalg;
namespace ts = mcalg::testsupport;

namespace {

PosetPtr chain2() { return make_poset({"a", "b"}, {{"a", "b"}}); }

}  // namespace

TEST_CASE("separation hypothesis checking") {
  Rng rng(83);
  for (int round = 0; round < 30; ++round) {
    PosetPtr p = ts::random_poset(rng, 1 + rng.below(5));
    auto family = ts::indicator_family(p);
    CHECK(check_separation(p, family).separating);
  }

  PosetPtr chain = chain2();
  std::vector<MonotoneMap> constants{MonotoneMap::constant(chain, Unit::of(1, 2))};
  SeparationCheck failed = check_separation(chain, constants);
  CHECK(!failed.separating);
  REQUIRE(failed.violation.has_value());
  CHECK(failed.violation->first == chain->index_of("a"));
  CHECK(failed.violation->second == chain->index_of("b"));

  PosetPtr antichain = make_poset({"a", "b"}, {});
  std::vector<MonotoneMap> one_way{MonotoneMap(antichain, {Unit::zero(), Unit::one()})};
  SeparationCheck half = check_separation(antichain, one_way);
  CHECK(!half.separating);
  REQUIRE(half.violation.has_value());
  // the unseparated direction: b is not >= a yet no generator drops from b to a
  CHECK(half.violation->first == antichain->index_of("b"));
  CHECK(half.violation->second == antichain->index_of("a"));
}

TEST_CASE("scaled separator values and parameters") {
  PosetPtr chain = chain2();
  std::vector<MonotoneMap> gens{MonotoneMap(chain, {Unit::zero(), Unit::one()})};
  SeparatorInfo sep = separator_term(chain, gens, 0, 1);
  CHECK(sep.cut == Unit::of(1, 2));
  CHECK(sep.copies == 2);
  auto values = eval_term_on_poset(chain, gens, sep.term);
  CHECK(values[0] == Unit::zero());
  CHECK(values[1] == Unit::one());

  // phi(x) = 1/4, phi(y) = 3/4: midpoint cut 1/2 and four copies
  PosetPtr pair = chain2();
  std::vector<MonotoneMap> quarter{MonotoneMap(pair, {Unit::of(1, 4), Unit::of(3, 4)})};
  SeparatorInfo wide = separator_term(pair, quarter, 0, 1);
  CHECK(wide.cut == Unit::of(1, 2));
  CHECK(wide.copies == 4);
  CHECK(eval_term_on_poset(pair, quarter, wide.term)[0] == Unit::zero());

  std::vector<MonotoneMap> constants{MonotoneMap::constant(chain, Unit::of(1, 2))};
  CHECK_THROWS_AS(separator_term(chain, constants, 0, 1), SeparationError);
}

TEST_CASE("approximation on the two-chain") {
  PosetPtr chain = chain2();
  std::vector<MonotoneMap> gens{MonotoneMap(chain, {Unit::zero(), Unit::one()})};
  MonotoneMap target(chain, {Unit::of(1, 4), Unit::of(1, 2)});

  ApproximationResult run = approximate(chain, gens, target, Unit::of(1, 8));
  CHECK(run.trace.error <= Unit::of(1, 8));

  // certificate soundness: the recorded values and error re-evaluate
  auto values = eval_term_on_poset(chain, gens, run.term);
  CHECK(values == run.trace.values);
  Unit err = Unit::zero();
  for (std::size_t z = 0; z < chain->size(); ++z) {
    err = join(err, dist(values[z], target.at(z)));
  }
  CHECK(err == run.trace.error);
}

TEST_CASE("a target equal to a generator is reproduced exactly") {
  PosetPtr chain = chain2();
  std::vector<MonotoneMap> gens{MonotoneMap(chain, {Unit::zero(), Unit::one()})};
  ApproximationResult run = approximate(chain, gens, gens[0], Unit::of(1, 8));
  CHECK(run.trace.error == Unit::zero());
}

TEST_CASE("constant targets come back as constant terms") {
  PosetPtr chain = chain2();
  std::vector<MonotoneMap> gens{MonotoneMap(chain, {Unit::zero(), Unit::one()})};
  MonotoneMap target = MonotoneMap::constant(chain, Unit::of(3, 4));
  ApproximationResult run = approximate(chain, gens, target, Unit::of(1, 2));
  CHECK(run.term == Term::constant(Unit::of(3, 4)));
  CHECK(run.trace.error == Unit::zero());
}

TEST_CASE("missing separation surfaces the violating pair") {
  PosetPtr chain = chain2();
  std::vector<MonotoneMap> constants{MonotoneMap::constant(chain, Unit::of(1, 2))};
  MonotoneMap target(chain, {Unit::zero(), Unit::one()});
  CHECK_THROWS_AS(approximate(chain, constants, target, Unit::of(1, 8)), SeparationError);
}

TEST_CASE("epsilon must be positive") {
  PosetPtr chain = chain2();
  std::vector<MonotoneMap> gens{MonotoneMap(chain, {Unit::zero(), Unit::one()})};
  CHECK_THROWS_AS(approximate(chain, gens, gens[0], Unit::zero()), RangeError);
}

TEST_CASE("random instances: certificate, proof properties, monotone output") {
  Rng rng(89);
  for (int round = 0; round < 40; ++round) {
    PosetPtr p = ts::random_poset(rng, 1 + rng.below(4));
    auto gens = ts::indicator_family(p);
    MonotoneMap target = ts::random_monotone_map(rng, p, 4);
    Unit epsilon = Unit::of(1, 16);

    ApproximationResult run = approximate(p, gens, target, epsilon);
    CHECK(run.trace.error <= epsilon);

    // the induced map is monotone (the constructor validates)
    MonotoneMap induced(p, run.trace.values);

    for (const AnchorTrace& anchor : run.trace.anchors) {
      // (a1): the envelope agrees with the target at its anchor
      CHECK(anchor.values[anchor.anchor] == target.at(anchor.anchor));
      // (a2): the envelope never drops epsilon below the target
      for (std::size_t z = 0; z < p->size(); ++z) {
        CHECK(anchor.values[z].value() > target.at(z).value() - epsilon.value());
      }
    }

    // density at every dyadic precision for a fixed small instance
    if (round < 5) {
      for (unsigned k = 2; k <= 6; ++k) {
        CHECK(approximate(p, gens, target, dyadic(k)).trace.error <= dyadic(k));
      }
    }
  }
}

TEST_CASE("approximation over the empty poset is trivial") {
  PosetPtr empty = make_poset({}, {});
  std::vector<MonotoneMap> no_gens;
  MonotoneMap target(empty, {});
  ApproximationResult run = approximate(empty, no_gens, target, Unit::of(1, 4));
  CHECK(run.trace.error == Unit::zero());
}
