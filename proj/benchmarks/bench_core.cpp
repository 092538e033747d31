#include <benchmark/benchmark.h>

#include "mcalg/algebra.hpp"
#include "mcalg/axioms.hpp"
#include "mcalg/rng.hpp"
#include "mcalg/stone_weierstrass.hpp"
#include "mcalg/term.hpp"

using namespace mcalg;

static void bm_scalar_mc_suite(benchmark::State& state) {
  AxiomOptions opts;
  opts.constant_grid = static_cast<unsigned>(state.range(0));
  opts.nm_bound = 2;
  AlgebraPtr scalar = scalar_algebra();
  for (auto _ : state) {
    auto reports = check_all_mc(*scalar, Strategy::exhaustive(opts.constant_grid), opts);
    benchmark::DoNotOptimize(reports);
  }
}
BENCHMARK(bm_scalar_mc_suite)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void bm_delta_closed_form(benchmark::State& state) {
  Rng rng(1);
  std::vector<Unit> prefix;
  for (int i = 0; i < 6; ++i) prefix.push_back(rng.unit_rational(64));
  Unit tail = rng.unit_rational(64);
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta_eventually_constant(prefix, tail));
  }
}
BENCHMARK(bm_delta_closed_form);

static void bm_delta_interval(benchmark::State& state) {
  std::vector<Term> prefix{Term::constant(Unit::zero()), Term::constant(Unit::of(1, 3))};
  Term term = Term::delta(
      SequenceSpec::explicit_then_constant(prefix, Term::constant(Unit::of(2, 3))));
  Unit epsilon = dyadic(static_cast<unsigned>(state.range(0)));
  Environment env;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_with_precision(term, env, epsilon));
  }
}
BENCHMARK(bm_delta_interval)->Arg(10)->Arg(20)->Arg(40);

static void bm_approximate(benchmark::State& state) {
  Rng rng(2);
  PosetPtr poset =
      make_poset({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
  std::vector<MonotoneMap> gens;
  for (std::size_t x = 0; x < poset->size(); ++x) {
    gens.push_back(MonotoneMap::complement_down_indicator(poset, x));
  }
  MonotoneMap target(poset, {Unit::zero(), Unit::of(1, 4), Unit::of(1, 2), Unit::of(3, 4)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(approximate(poset, gens, target, Unit::of(1, 16)));
  }
}
BENCHMARK(bm_approximate);

static void bm_enumerate_monotone_maps(benchmark::State& state) {
  PosetPtr chain = make_poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  DyadicGrid grid(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_monotone_maps(chain, grid));
  }
}
BENCHMARK(bm_enumerate_monotone_maps)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
