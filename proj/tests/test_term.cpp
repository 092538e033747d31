#include <doctest.h>

#include <vector>

#include "mcalg/errors.hpp"
#include "mcalg/rng.hpp"
#include "mcalg/term.hpp"
#include "support/generators.hpp"

using namespace mcalg;
using mcalg::testsupport::random_finitary_term;

namespace {

// Independent oracle: iterate the rho recursion on an eventually constant
// sequence until the sandwich width drops below 2^-depth, and return the
// enclosure. Written directly against the scalar operations so it shares
// nothing with the closed form under test.
Interval iterate_rho_oracle(const std::vector<Unit>& prefix, const Unit& tail,
                            unsigned depth) {
  auto entry = [&](std::size_t i) { return i < prefix.size() ? prefix[i] : tail; };
  Unit rho = entry(0);
  Unit running_join = entry(0);
  std::size_t n = 0;
  while (hnn_gap(n) > dyadic(depth)) {
    ++n;
    running_join = join(running_join, entry(n));
    rho = meet(running_join, oplus(rho, dyadic(static_cast<unsigned>(n - 1))));
  }
  return Interval{rho, oplus(rho, hnn_gap(n))};
}

}  // namespace

TEST_CASE("rho_term base case and worked value") {
  CHECK(rho_term(0) == Term::var(0));

  Environment env{{0, Unit::zero()}, {1, Unit::of(1, 5)}, {2, Unit::of(9, 10)}};
  CHECK(eval_finitary(rho_term(2), env) == Unit::of(7, 10));
  CHECK(rho_value(std::vector<Unit>{Unit::zero(), Unit::of(1, 5), Unit::of(9, 10)}) ==
        Unit::of(7, 10));
}

TEST_CASE("rho_1 collapses to the join on the dyadic grid") {
  // x0 (+) 1/2^0 saturates, so rho_1 = (x0 v x1) ^ 1 = x0 v x1.
  DyadicGrid grid(4);
  Term rho1 = rho_term(1);
  Term joined = Term::join(Term::var(0), Term::var(1));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      Environment env{{0, grid.at(i)}, {1, grid.at(j)}};
      CHECK(eval_finitary(rho1, env) == eval_finitary(joined, env));
    }
  }
}

TEST_CASE("rho_term evaluates like the direct recursion") {
  Rng rng(13);
  for (std::size_t n = 0; n <= 5; ++n) {
    Term rho = rho_term(n);
    for (int round = 0; round < 30; ++round) {
      std::vector<Unit> xs;
      Environment env;
      for (std::size_t i = 0; i <= n; ++i) {
        xs.push_back(rng.unit_rational(16));
        env.bind(i, xs.back());
      }
      CHECK(eval_finitary(rho, env) == rho_value(xs));
    }
  }
}

TEST_CASE("intervals around the dyadic-ominus delta enclose its value") {
  Environment env;
  Term term = Term::delta(SequenceSpec::ominus_dyadic(Term::constant(Unit::of(2, 5))));
  for (unsigned k = 2; k <= 12; k += 2) {
    Interval box = eval_with_precision(term, env, dyadic(k));
    CHECK(box.contains(Unit::of(2, 5)));
    CHECK(box.width() <= dyadic(k));
  }
}

TEST_CASE("rho chain is HNN-Cauchy") {
  Rng rng(7);
  for (int round = 0; round < 200; ++round) {
    std::vector<Unit> xs;
    std::size_t len = 2 + rng.below(8);
    for (std::size_t i = 0; i < len; ++i) xs.push_back(rng.unit_rational(16));
    for (std::size_t n = 0; n + 1 < len; ++n) {
      Unit lo = rho_value(std::span<const Unit>(xs.data(), n + 1));
      Unit hi = rho_value(std::span<const Unit>(xs.data(), n + 2));
      CHECK(lo <= hi);
      CHECK(hi <= oplus(lo, dyadic(static_cast<unsigned>(n))));
    }
  }
}

TEST_CASE("rho fixes HNN-Cauchy sequences") {
  Rng rng(11);
  for (int round = 0; round < 200; ++round) {
    std::vector<Unit> xs{rng.unit_rational(16)};
    for (unsigned n = 0; n < 8; ++n) {
      // increment at most 1/2^n keeps the sequence HNN-Cauchy
      Rational step = dyadic(n).value() * Rational(rng.below(5), 4);
      Rational next = xs.back().value() + step;
      xs.push_back(next >= 1 ? Unit::one() : Unit{next});
    }
    for (std::size_t n = 0; n < xs.size(); ++n) {
      CHECK(rho_value(std::span<const Unit>(xs.data(), n + 1)) == xs[n]);
    }
  }
}

TEST_CASE("eval_finitary examples and errors") {
  CHECK(eval_finitary(Term::oplus(Term::constant(Unit::of(1, 4)), Term::constant(Unit::of(1, 2))),
                      {}) == Unit::of(3, 4));
  Environment env{{0, Unit::of(2, 5)}};
  CHECK(eval_finitary(Term::meet(Term::var(0), Term::constant(Unit::one())), env) ==
        Unit::of(2, 5));
  CHECK_THROWS_AS(eval_finitary(Term::var(3), env), UnboundVariableError);
  CHECK_THROWS_AS(
      eval_finitary(Term::delta(SequenceSpec::constant_seq(Term::var(0))), env),
      NotSupportedError);
}

TEST_CASE("exact delta on the structured specs") {
  Environment env;
  CHECK(eval_delta_exact(SequenceSpec::constant_seq(Term::constant(Unit::of(1, 3))), env) ==
        Unit::of(1, 3));
  CHECK(eval_delta_exact(SequenceSpec::ominus_dyadic(Term::constant(Unit::of(2, 5))), env) ==
        Unit::of(2, 5));

  auto etc = [](std::vector<Unit> prefix, Unit tail) {
    std::vector<Term> terms;
    for (const Unit& v : prefix) terms.push_back(Term::constant(v));
    return SequenceSpec::explicit_then_constant(std::move(terms), Term::constant(tail));
  };
  CHECK(eval_delta_exact(etc({Unit::zero(), Unit::zero(), Unit::zero()}, Unit::one()), env) ==
        Unit::of(1, 2));
  CHECK(eval_delta_exact(etc({Unit::zero(), Unit::zero()}, Unit::one()), env) == Unit::one());

  auto generated = SequenceSpec::generator([](std::size_t) { return Term::constant(Unit::zero()); });
  CHECK_THROWS_AS(eval_delta_exact(generated, env), NotSupportedError);
}

TEST_CASE("closed form agrees with the iteration oracle") {
  Rng rng(23);
  for (int round = 0; round < 300; ++round) {
    std::vector<Unit> prefix;
    std::size_t len = 1 + rng.below(6);
    for (std::size_t i = 0; i < len; ++i) prefix.push_back(rng.unit_rational(16));
    Unit tail = rng.unit_rational(16);

    Unit closed = delta_eventually_constant(prefix, tail);
    Interval oracle = iterate_rho_oracle(prefix, tail, 40);
    CHECK(oracle.contains(closed));
  }
}

TEST_CASE("delta is monotone on pointwise-ordered sequences") {
  Rng rng(29);
  for (int round = 0; round < 300; ++round) {
    std::size_t len = 1 + rng.below(6);
    std::vector<Unit> xs, zs;
    for (std::size_t i = 0; i < len; ++i) {
      Unit x = rng.unit_rational(16);
      xs.push_back(x);
      zs.push_back(join(x, rng.unit_rational(16)));
    }
    Unit x_tail = rng.unit_rational(16);
    Unit z_tail = join(x_tail, rng.unit_rational(16));
    CHECK(delta_eventually_constant(xs, x_tail) <= delta_eventually_constant(zs, z_tail));
  }
}

TEST_CASE("guaranteed-width intervals for delta terms") {
  Environment env;

  Term constant_delta = Term::delta(SequenceSpec::constant_seq(Term::constant(Unit::of(1, 3))));
  Interval box = eval_with_precision(constant_delta, env, Unit::of(1, 8));
  CHECK(box.contains(Unit::of(1, 3)));
  CHECK(box.width() <= Unit::of(1, 8));

  std::vector<Term> zeros{Term::constant(Unit::zero()), Term::constant(Unit::zero()),
                          Term::constant(Unit::zero())};
  Term half_delta = Term::delta(
      SequenceSpec::explicit_then_constant(zeros, Term::constant(Unit::one())));
  Interval tight = eval_with_precision(half_delta, env, Unit::of(1, 1024));
  CHECK(tight.contains(Unit::of(1, 2)));
  CHECK(tight.width() <= Unit::of(1, 1024));
}

TEST_CASE("interval evaluation of a nested delta") {
  // oplus(delta(...), const 1/5): the exact value is known, so containment
  // and the width bound are checked against it.
  Environment env;
  std::vector<Term> prefix{Term::constant(Unit::zero()), Term::constant(Unit::zero()),
                           Term::constant(Unit::zero())};
  SequenceSpec spec = SequenceSpec::explicit_then_constant(prefix, Term::constant(Unit::one()));
  Unit inner = eval_delta_exact(spec, env);
  Term term = Term::oplus(Term::delta(spec), Term::constant(Unit::of(1, 5)));
  Unit exact = oplus(inner, Unit::of(1, 5));

  Interval box = eval_with_precision(term, env, Unit::of(1, 16));
  CHECK(box.contains(exact));
  CHECK(box.width() <= Unit::of(1, 16));
}

TEST_CASE("sandwich soundness: exact delta inside every interval") {
  Rng rng(31);
  Environment env;
  for (int round = 0; round < 100; ++round) {
    std::vector<Term> prefix;
    std::size_t len = 1 + rng.below(5);
    for (std::size_t i = 0; i < len; ++i) {
      prefix.push_back(Term::constant(rng.unit_rational(12)));
    }
    SequenceSpec spec =
        SequenceSpec::explicit_then_constant(prefix, Term::constant(rng.unit_rational(12)));
    Unit exact = eval_delta_exact(spec, env);
    for (unsigned k = 2; k <= 10; k += 2) {
      Interval box = eval_with_precision(Term::delta(spec), env, dyadic(k));
      CHECK(box.contains(exact));
      CHECK(box.width() <= dyadic(k));
    }
  }
}

TEST_CASE("generator specs supply entries on demand or fail loudly") {
  Environment env;
  SequenceSpec gen = SequenceSpec::generator(
      [](std::size_t i) {
        return Term::constant(i == 0 ? Unit::zero() : Unit::one());
      });
  Interval box = eval_with_precision(Term::delta(gen), env, Unit::of(1, 16));
  // the sequence is 0, 1, 1, ... whose limit is 1
  CHECK(box.contains(Unit::one()));

  SequenceSpec starved = SequenceSpec::generator(
      [](std::size_t) { return Term::constant(Unit::zero()); }, 3);
  CHECK_THROWS_AS(eval_with_precision(Term::delta(starved), env, Unit::of(1, 64)),
                  NotSupportedError);
}

TEST_CASE("arity counts the densely used variables") {
  CHECK(Term::constant(Unit::zero()).arity() == 0);
  CHECK(Term::var(0).arity() == 1);
  CHECK(rho_term(4).arity() == 5);
  Term t = Term::oplus(Term::var(2), Term::constant(Unit::of(1, 2)));
  CHECK(t.arity() == 3);
}

TEST_CASE("structural equality distinguishes shapes") {
  Rng rng(37);
  for (int round = 0; round < 50; ++round) {
    Term t = random_finitary_term(rng, 3, 3);
    CHECK(t == t);
  }
  CHECK(Term::oplus(Term::var(0), Term::var(1)) != Term::oplus(Term::var(1), Term::var(0)));
  CHECK(Term::ominus(Term::var(0), Unit::of(1, 2)) != Term::ominus(Term::var(0), Unit::of(1, 4)));
}
