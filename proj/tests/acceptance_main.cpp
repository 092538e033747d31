// Acceptance suite: one check per stated criterion, each printing a single
// PASS/FAIL line. The process exits with the number of failed criteria.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "mcalg/algebra.hpp"
#include "mcalg/axioms.hpp"
#include "mcalg/duality.hpp"
#include "mcalg/rng.hpp"
#include "mcalg/stone_weierstrass.hpp"
#include "support/generators.hpp"

using namespace mcalg;
namespace ts = mcalg::testsupport;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool passed, const std::string& detail) {
  std::cout << (passed ? "PASS" : "FAIL") << " criterion-" << number << " " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!passed) ++failures;
}

double run_timed(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --------------------------------------------------------------------------
// 1. Exhaustive finitary conformance on the scalar carrier, grid 1/8.

void criterion_1() {
  AxiomOptions opts;
  opts.constant_grid = 3;
  opts.nm_bound = 3;

  std::vector<ConformanceReport> reports;
  double seconds = run_timed([&] {
    reports = check_all_mc(*scalar_algebra(), Strategy::exhaustive(3), opts);
  });

  std::size_t failed = 0;
  for (const ConformanceReport& r : reports) {
    if (!r.passed) ++failed;
  }
  // every axiom group must be instantiated
  std::vector<std::string> expected{"1a", "1j", "2a", "2d", "3a", "3d", "4a",
                                    "4d", "5",  "6",  "7",  "8",  "9",  "10",
                                    "11", "12"};
  bool all_groups = true;
  for (const std::string& code : expected) {
    bool found = false;
    for (const ConformanceReport& r : reports) {
      if (r.id.code == code) {
        found = true;
        break;
      }
    }
    if (!found) all_groups = false;
  }

  std::ostringstream detail;
  detail << reports.size() << " instances, " << failed << " failed, " << seconds << "s";
  report(1, "mc-conformance-exhaustive",
         failed == 0 && all_groups && seconds < 60.0, detail.str());
}

// --------------------------------------------------------------------------
// 2. Delta axioms on the scalar carrier; the sandwich for n <= 8 on 500
//    seeded explicit-then-constant specs, exact containment.

void criterion_2() {
  AxiomOptions opts;
  opts.sequence_samples = 100;
  bool d_axioms = true;
  for (const ConformanceReport& r :
       check_mc_infty(*scalar_algebra(), Strategy::exhaustive(3), opts)) {
    if (!r.passed) d_axioms = false;
  }

  Rng rng(20250801);
  std::size_t violations = 0;
  for (int round = 0; round < 500; ++round) {
    std::size_t len = 1 + rng.below(6);
    std::vector<Unit> prefix;
    std::vector<Term> prefix_terms;
    for (std::size_t i = 0; i < len; ++i) {
      prefix.push_back(rng.unit_rational(16));
      prefix_terms.push_back(Term::constant(prefix.back()));
    }
    Unit tail = rng.unit_rational(16);

    SequenceSpec spec =
        SequenceSpec::explicit_then_constant(prefix_terms, Term::constant(tail));
    Unit delta = eval_delta_exact(spec, Environment{});
    auto entry = [&](std::size_t i) { return i < prefix.size() ? prefix[i] : tail; };
    std::vector<Unit> entries;
    for (std::size_t n = 0; n <= 8; ++n) {
      entries.push_back(entry(n));
      Unit rho = rho_value(entries);
      if (!(rho <= delta && delta <= oplus(rho, hnn_gap(n)))) ++violations;
    }
  }

  std::ostringstream detail;
  detail << "500 specs, n <= 8, " << violations << " sandwich violations";
  report(2, "mcinf-conformance", d_axioms && violations == 0, detail.str());
}

// --------------------------------------------------------------------------
// 3. Closed form against the iterated-rho enclosure at width 1/2^40, plus
//    the three worked values.

void criterion_3() {
  Rng rng(20250803);
  std::size_t outside = 0;
  for (int round = 0; round < 1000; ++round) {
    std::size_t len = 1 + rng.below(6);
    std::vector<Unit> prefix;
    std::vector<Term> prefix_terms;
    for (std::size_t i = 0; i < len; ++i) {
      prefix.push_back(rng.unit_rational(16));
      prefix_terms.push_back(Term::constant(prefix.back()));
    }
    Unit tail = rng.unit_rational(16);
    Unit closed = eval_delta_exact(
        SequenceSpec::explicit_then_constant(prefix_terms, Term::constant(tail)),
        Environment{});

    auto entry = [&](std::size_t i) { return i < prefix.size() ? prefix[i] : tail; };
    Unit rho = entry(0);
    Unit running_join = entry(0);
    std::size_t n = 0;
    while (hnn_gap(n) > dyadic(40)) {
      ++n;
      running_join = join(running_join, entry(n));
      rho = meet(running_join, oplus(rho, dyadic(static_cast<unsigned>(n - 1))));
    }
    if (!(rho <= closed && closed <= oplus(rho, hnn_gap(n)))) ++outside;
  }

  bool worked =
      delta_eventually_constant(std::vector<Unit>{Unit::zero(), Unit::zero()}, Unit::one()) ==
          Unit::one() &&
      delta_eventually_constant(
          std::vector<Unit>{Unit::zero(), Unit::zero(), Unit::zero()}, Unit::one()) ==
          Unit::of(1, 2);
  Rng xs(3);
  for (int i = 0; i < 20; ++i) {
    Unit x = xs.unit_rational(16);
    if (delta_eventually_constant(std::vector<Unit>{x}, x) != x) worked = false;
  }

  std::ostringstream detail;
  detail << "1000 specs at width 1/2^40, " << outside << " outside";
  report(3, "delta-closed-form-vs-iteration", outside == 0 && worked, detail.str());
}

// --------------------------------------------------------------------------
// 4. The HNN gap bound a_n <= a_m <= a_n + 1/2^(n-1) on seeded prefixes of
//    length 12, scalar and function carriers.

void criterion_4() {
  std::size_t violations = 0;
  std::size_t checked = 0;

  auto check_prefix = [&](const Algebra& algebra, const std::vector<Element>& prefix) {
    if (!algebra.is_hnn_cauchy(prefix).ok) {
      ++violations;
      return;
    }
    for (std::size_t n = 0; n < prefix.size(); ++n) {
      for (std::size_t m = n; m < prefix.size(); ++m) {
        ++checked;
        bool ordered = algebra.leq(prefix[n], prefix[m]);
        bool bounded = algebra.leq(
            prefix[m], algebra.apply(OpSym::Oplus, prefix[n], algebra.constant(hnn_gap(n))));
        if (!ordered || !bounded) ++violations;
      }
    }
  };

  Rng rng(20250804);
  AlgebraPtr scalar = scalar_algebra();
  for (int round = 0; round < 250; ++round) {
    std::vector<Element> prefix{scalar->sample(rng)};
    for (unsigned n = 0; prefix.size() < 12; ++n) {
      Rational step = dyadic(n).value() * Rational(rng.below(9), 8);
      Rational next = prefix.back().as_scalar().value() + step;
      prefix.push_back(Element::scalar(next >= 1 ? Unit::one() : Unit{next}));
    }
    check_prefix(*scalar, prefix);
  }

  for (int round = 0; round < 250; ++round) {
    PosetPtr p = ts::random_poset(rng, 1 + rng.below(5));
    AlgebraPtr algebra = function_algebra(p);
    std::vector<Element> prefix{Element::function(ts::random_monotone_map(rng, p, 3))};
    for (unsigned n = 0; prefix.size() < 12; ++n) {
      // a monotone increment bounded by 1/2^n keeps the chain in the carrier
      MonotoneMap raw = ts::random_monotone_map(rng, p, 3);
      std::vector<Unit> scaled;
      for (std::size_t i = 0; i < raw.size(); ++i) {
        scaled.push_back(Unit{raw.at(i).value() * dyadic(n).value()});
      }
      Element step = Element::function(MonotoneMap(p, std::move(scaled)));
      prefix.push_back(algebra->apply(OpSym::Oplus, prefix.back(), step));
    }
    check_prefix(*algebra, prefix);
  }

  std::ostringstream detail;
  detail << "500 prefixes, " << checked << " ordered pairs, " << violations << " violations";
  report(4, "hnn-gap-bound", violations == 0, detail.str());
}

// --------------------------------------------------------------------------
// 5. Duality round-trip: eta on every poset with at most 5 points up to
//    isomorphism; Max of generated families against an independent
//    pairwise-comparison oracle.

void criterion_5() {
  std::size_t poset_count = 0;
  std::size_t eta_failures = 0;
  std::size_t five_point_classes = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    auto posets = ts::posets_up_to_iso(n);
    if (n == 5) five_point_classes = posets.size();
    for (const PosetPtr& p : posets) {
      ++poset_count;
      EtaResult eta = unit_eta(p);
      if (!(eta.report.injective && eta.report.surjective && eta.report.order_iso)) {
        ++eta_failures;
      }
    }
  }

  Rng rng(20250805);
  std::size_t oracle_disagreements = 0;
  for (int round = 0; round < 200; ++round) {
    PosetPtr p = ts::random_poset(rng, 1 + rng.below(6));
    std::vector<MonotoneMap> gens;
    std::size_t k = 1 + rng.below(3);
    for (std::size_t i = 0; i < k; ++i) gens.push_back(ts::random_monotone_map(rng, p, 2));

    DualSpace max = max_of_generated(p, gens);

    // independent oracle: direct pairwise comparisons
    std::size_t size = p->size();
    std::vector<std::vector<bool>> below(size, std::vector<bool>(size, true));
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t y = 0; y < size; ++y) {
        for (const MonotoneMap& g : gens) {
          if (g.at(x) > g.at(y)) {
            below[x][y] = false;
            break;
          }
        }
      }
    }
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t y = 0; y < size; ++y) {
        bool same_class_oracle = below[x][y] && below[y][x];
        bool same_class = max.point_map[x] == max.point_map[y];
        bool leq_class = max.space->leq(max.point_map[x], max.point_map[y]);
        if (same_class_oracle != same_class || below[x][y] != leq_class) {
          ++oracle_disagreements;
        }
      }
    }
  }

  std::ostringstream detail;
  detail << poset_count << " posets (" << five_point_classes
         << " on five points), eta failures " << eta_failures
         << "; 200 generated pairs, disagreements " << oracle_disagreements;
  report(5, "duality-round-trip",
         eta_failures == 0 && five_point_classes >= 63 && oracle_disagreements == 0,
         detail.str());
}

// --------------------------------------------------------------------------
// 6. Urysohn separators on seeded posets: psi(x) = 0, psi(y) = 1, monotone.

void criterion_6() {
  Rng rng(20250806);
  std::size_t pairs = 0;
  std::size_t bad = 0;
  for (int round = 0; round < 100; ++round) {
    PosetPtr p = ts::random_poset(rng, 1 + rng.below(6));
    for (std::size_t x = 0; x < p->size(); ++x) {
      for (std::size_t y = 0; y < p->size(); ++y) {
        if (p->leq(y, x)) continue;  // x >= y excluded
        ++pairs;
        try {
          MonotoneMap psi = urysohn_separator(p, x, y);  // constructor checks monotone
          if (psi.at(x) != Unit::zero() || psi.at(y) != Unit::one()) ++bad;
        } catch (const std::exception&) {
          ++bad;
        }
      }
    }
  }
  std::ostringstream detail;
  detail << pairs << " separable pairs, " << bad << " defects";
  report(6, "urysohn-separators", bad == 0, detail.str());
}

// --------------------------------------------------------------------------
// 7. Constructive approximation: 100 seeded instances, error <= 1/16 and
//    the per-anchor proof properties on every trace.

void criterion_7() {
  Rng rng(20250807);
  std::size_t bad = 0;
  double seconds = run_timed([&] {
    for (int round = 0; round < 100; ++round) {
      PosetPtr p = ts::random_poset(rng, 1 + rng.below(4));
      auto gens = ts::indicator_family(p);
      MonotoneMap target = ts::random_monotone_map(rng, p, 4);
      Unit epsilon = Unit::of(1, 16);

      ApproximationResult run = approximate(p, gens, target, epsilon);
      if (run.trace.error > epsilon) ++bad;
      auto values = eval_term_on_poset(p, gens, run.term);
      if (values != run.trace.values) ++bad;
      for (const AnchorTrace& anchor : run.trace.anchors) {
        if (anchor.values[anchor.anchor] != target.at(anchor.anchor)) ++bad;
        for (std::size_t z = 0; z < p->size(); ++z) {
          if (!(anchor.values[z].value() > target.at(z).value() - epsilon.value())) ++bad;
        }
      }
    }
  });
  std::ostringstream detail;
  detail << "100 instances at epsilon 1/16, " << bad << " defects, " << seconds << "s";
  report(7, "stone-weierstrass", bad == 0 && seconds < 60.0, detail.str());
}

// --------------------------------------------------------------------------
// 8. dist as sup at finite scale: the definitional inf over lambda equals
//    the sup-metric formula, exactly.

void criterion_8() {
  Rng rng(20250808);
  std::size_t bad = 0;
  for (int round = 0; round < 500; ++round) {
    PosetPtr p = ts::random_poset(rng, 1 + rng.below(5));
    MonotoneMap f = ts::random_monotone_map(rng, p, 4);
    MonotoneMap g = ts::random_monotone_map(rng, p, 4);

    // formula side
    Unit formula = dist_up(f, g);

    // definitional side: the attained witnesses supply the candidate grid
    std::vector<Unit> candidates{Unit::zero()};
    for (std::size_t z = 0; z < p->size(); ++z) {
      candidates.push_back(dist_up(f.at(z), g.at(z)));
    }
    std::sort(candidates.begin(), candidates.end());
    auto member = [&](const Unit& lambda) {
      for (std::size_t z = 0; z < p->size(); ++z) {
        if (!(g.at(z) <= oplus(f.at(z), lambda))) return false;
      }
      return true;
    };
    std::optional<Unit> definitional;
    for (const Unit& lambda : candidates) {
      bool in = member(lambda);
      if (in && !definitional) definitional = lambda;
      if (!in && definitional) ++bad;  // membership must be upward closed
      if (definitional && lambda < *definitional) ++bad;
    }
    if (!definitional || *definitional != formula) ++bad;

    // the symmetric distance through evaluation morphisms
    Unit through_points = Unit::zero();
    for (std::size_t z = 0; z < p->size(); ++z) {
      through_points = join(through_points, dist(f.at(z), g.at(z)));
    }
    if (through_points != join(dist_up(f, g), dist_up(g, f))) ++bad;
  }
  std::ostringstream detail;
  detail << "500 pairs, " << bad << " disagreements";
  report(8, "dist-as-sup", bad == 0, detail.str());
}

// --------------------------------------------------------------------------
// 9. The unit map preserves dist on generated algebras, exactly.

void criterion_9() {
  Rng rng(20250809);
  std::size_t bad = 0;
  for (int round = 0; round < 200; ++round) {
    PosetPtr p = ts::random_poset(rng, 1 + rng.below(5));
    std::vector<MonotoneMap> gens;
    std::size_t k = 1 + rng.below(3);
    for (std::size_t i = 0; i < k; ++i) gens.push_back(ts::random_monotone_map(rng, p, 2));
    auto algebra = std::make_shared<GeneratedAlgebra>(p, gens);
    DualSpace max = max_of_generated(p, gens);

    Element a = algebra->sample(rng);
    Element b = algebra->sample(rng);
    Unit before = algebra->dist(a, b).dist;
    Unit after = Unit::zero();
    for (std::size_t c = 0; c < max.space->size(); ++c) {
      after =
          join(after, dist(a.as_map().at(max.witness[c]), b.as_map().at(max.witness[c])));
    }
    if (before != after) ++bad;
  }
  std::ostringstream detail;
  detail << "200 element pairs, " << bad << " disagreements";
  report(9, "unit-preserves-dist", bad == 0, detail.str());
}

// --------------------------------------------------------------------------
// 10. Negative controls: the sabotaged carrier, the two-cycle preorder,
//     and a non-separating family must all be caught.

class SabotagedScalar : public ScalarAlgebra {
public:
  std::string describe() const override { return "scalar with oplus = max"; }
  Element apply(OpSym op, const Element& a, const Element& b) const override {
    if (op == OpSym::Oplus) return ScalarAlgebra::apply(OpSym::Join, a, b);
    return ScalarAlgebra::apply(op, a, b);
  }
};

void criterion_10() {
  bool ok = true;
  std::ostringstream detail;

  SabotagedScalar broken;
  AxiomOptions opts;
  auto first = check_all_mc(broken, Strategy::exhaustive(3), opts);
  auto second = check_all_mc(broken, Strategy::exhaustive(3), opts);
  bool table_failure = false;
  bool reproducible = first.size() == second.size();
  for (std::size_t i = 0; i < first.size() && reproducible; ++i) {
    if (first[i].line() != second[i].line()) reproducible = false;
  }
  for (const ConformanceReport& r : first) {
    if (r.passed) continue;
    if ((r.id.code == "9" || r.id.code == "10" || r.id.code == "11" || r.id.code == "12") &&
        r.counterexample) {
      table_failure = true;
      break;
    }
  }
  if (!table_failure || !reproducible) {
    ok = false;
    detail << "sabotage undetected; ";
  }

  PreorderPtr cycle = make_preorder({"a", "b"}, {{"a", "b"}, {"b", "a"}});
  EtaResult eta = unit_eta(cycle);
  if (eta.report.injective || !eta.report.merged) {
    ok = false;
    detail << "cycle collapse undetected; ";
  }

  PosetPtr chain = make_poset({"a", "b"}, {{"a", "b"}});
  std::vector<MonotoneMap> constants{MonotoneMap::constant(chain, Unit::of(1, 2))};
  SeparationCheck sep = check_separation(chain, constants);
  if (sep.separating || !sep.violation) {
    ok = false;
    detail << "non-separation undetected; ";
  }

  if (ok) detail << "all three controls caught";
  report(10, "negative-controls", ok, detail.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
            << (10 - failures) << "/10)" << std::endl;
  return failures;
}
