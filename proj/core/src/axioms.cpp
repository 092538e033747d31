#include "mcalg/axioms.hpp"

#include <functional>
#include <sstream>

#include "mcalg/errors.hpp"
#include "mcalg/parser.hpp"
#include "mcalg/rng.hpp"

namespace mcalg {

std::string AxiomId::str() const {
  if (params.empty()) return code;
  std::ostringstream out;
  out << code << "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out << ",";
    out << params[i].first << "=" << params[i].second;
  }
  out << ")";
  return out.str();
}

std::string Counterexample::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rendered.size(); ++i) {
    if (i) out << ", ";
    out << "x" << i << "=" << rendered[i];
  }
  if (!rendered.empty()) out << "; ";
  out << detail;
  return out.str();
}

std::string ConformanceReport::line() const {
  std::ostringstream out;
  out << (passed ? "PASS" : "FAIL") << " " << id.str() << " cases=" << cases
      << " strategy=" << strategy;
  if (counterexample) out << " counterexample: " << counterexample->str();
  return out.str();
}

Strategy Strategy::exhaustive(unsigned grid_exponent) {
  Strategy s;
  s.kind = Kind::Exhaustive;
  s.grid_exponent = grid_exponent;
  return s;
}

Strategy Strategy::sampled(std::size_t samples, std::uint64_t seed) {
  Strategy s;
  s.kind = Kind::Sampled;
  s.samples = samples;
  s.seed = seed;
  return s;
}

std::string Strategy::str() const {
  if (kind == Kind::Exhaustive) return "grid(" + std::to_string(grid_exponent) + ")";
  return "sampled(" + std::to_string(samples) + ",seed=" + std::to_string(seed) + ")";
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Reports are independent per axiom instance: the per-instance stream is
/// derived from the run seed and the instance id, not the run order.
Rng rng_for(const Strategy& strategy, const AxiomId& id) {
  return Rng(strategy.seed ^ fnv1a(id.str()));
}

Term v0() { return Term::var(0); }
Term v1() { return Term::var(1); }
Term v2() { return Term::var(2); }

EquationInstance eq(std::string code, Term lhs, Term rhs, std::size_t vars) {
  return EquationInstance{AxiomId{std::move(code), {}}, std::move(lhs), std::move(rhs), vars};
}

/// s <= t rendered equationally as meet(s, t) = s.
EquationInstance ineq(AxiomId id, Term s, Term t, std::size_t vars) {
  Term lhs = Term::meet(s, t);
  return EquationInstance{std::move(id), std::move(lhs), std::move(s), vars};
}

/// Runs `predicate` over assignments of `vars` elements, exhaustively over
/// the carrier grid or by seeded sampling. The predicate returns a detail
/// string for a violation, or nullopt.
ConformanceReport run_assignments(
    const Algebra& algebra, AxiomId id, std::size_t vars, const Strategy& strategy,
    const std::function<std::optional<std::string>(std::span<const Element>)>& predicate) {
  ConformanceReport report;
  report.id = id;
  report.strategy = strategy.str();

  auto fail_with = [&](std::span<const Element> assignment, std::string detail) {
    report.passed = false;
    Counterexample ce;
    ce.assignment.assign(assignment.begin(), assignment.end());
    for (const Element& e : assignment) ce.rendered.push_back(e.render());
    ce.detail = std::move(detail);
    report.counterexample = std::move(ce);
  };

  if (strategy.kind == Strategy::Kind::Sampled) {
    Rng rng = rng_for(strategy, id);
    for (std::size_t s = 0; s < strategy.samples; ++s) {
      std::vector<Element> assignment;
      assignment.reserve(vars);
      for (std::size_t i = 0; i < vars; ++i) assignment.push_back(algebra.sample(rng));
      ++report.cases;
      if (auto detail = predicate(assignment)) {
        fail_with(assignment, std::move(*detail));
        return report;
      }
    }
    return report;
  }

  std::vector<Element> pool = algebra.enumerate(DyadicGrid(strategy.grid_exponent));
  if (vars == 0) {
    ++report.cases;
    if (auto detail = predicate({})) fail_with({}, std::move(*detail));
    return report;
  }
  std::vector<std::size_t> idx(vars, 0);
  std::vector<Element> assignment(vars, pool.front());
  while (true) {
    for (std::size_t i = 0; i < vars; ++i) assignment[i] = pool[idx[i]];
    ++report.cases;
    if (auto detail = predicate(assignment)) {
      fail_with(assignment, std::move(*detail));
      return report;
    }
    std::size_t i = vars;
    while (i > 0) {
      --i;
      if (++idx[i] < pool.size()) break;
      idx[i] = 0;
      if (i == 0) return report;
    }
  }
}

ConformanceReport check_equation(const Algebra& algebra, const EquationInstance& axiom,
                                 const Strategy& strategy) {
  return run_assignments(
      algebra, axiom.id, axiom.vars, strategy,
      [&](std::span<const Element> assignment) -> std::optional<std::string> {
        Element lhs = eval_term_in(algebra, axiom.lhs, assignment);
        Element rhs = eval_term_in(algebra, axiom.rhs, assignment);
        if (algebra.equal(lhs, rhs)) return std::nullopt;
        return render_term(axiom.lhs) + " = " + lhs.render() + " but " +
               render_term(axiom.rhs) + " = " + rhs.render();
      });
}

}  // namespace

std::vector<EquationInstance> mc_axiom_instances(const AxiomOptions& opts) {
  std::vector<EquationInstance> out;

  // 1: distributive bounded lattice.
  out.push_back(eq("1a", Term::join(v0(), v1()), Term::join(v1(), v0()), 2));
  out.push_back(eq("1b", Term::meet(v0(), v1()), Term::meet(v1(), v0()), 2));
  out.push_back(eq("1c", Term::join(v0(), Term::join(v1(), v2())),
                   Term::join(Term::join(v0(), v1()), v2()), 3));
  out.push_back(eq("1d", Term::meet(v0(), Term::meet(v1(), v2())),
                   Term::meet(Term::meet(v0(), v1()), v2()), 3));
  out.push_back(eq("1e", Term::join(v0(), Term::meet(v0(), v1())), v0(), 2));
  out.push_back(eq("1f", Term::meet(v0(), Term::join(v0(), v1())), v0(), 2));
  out.push_back(eq("1g", Term::join(v0(), Term::constant(Unit::zero())), v0(), 1));
  out.push_back(eq("1h", Term::meet(v0(), Term::constant(Unit::one())), v0(), 1));
  out.push_back(eq("1i", Term::join(v0(), Term::meet(v1(), v2())),
                   Term::meet(Term::join(v0(), v1()), Term::join(v0(), v2())), 3));
  out.push_back(eq("1j", Term::meet(v0(), Term::join(v1(), v2())),
                   Term::join(Term::meet(v0(), v1()), Term::meet(v0(), v2())), 3));

  // 2: oplus commutative monoid with absorbing 1.
  out.push_back(eq("2a", Term::oplus(Term::oplus(v0(), v1()), v2()),
                   Term::oplus(v0(), Term::oplus(v1(), v2())), 3));
  out.push_back(eq("2b", Term::oplus(v0(), v1()), Term::oplus(v1(), v0()), 2));
  out.push_back(eq("2c", Term::oplus(v0(), Term::constant(Unit::zero())), v0(), 1));
  out.push_back(eq("2d", Term::oplus(v0(), Term::constant(Unit::one())),
                   Term::constant(Unit::one()), 1));

  // 3: odot commutative monoid with absorbing 0.
  out.push_back(eq("3a", Term::odot(Term::odot(v0(), v1()), v2()),
                   Term::odot(v0(), Term::odot(v1(), v2())), 3));
  out.push_back(eq("3b", Term::odot(v0(), v1()), Term::odot(v1(), v0()), 2));
  out.push_back(eq("3c", Term::odot(v0(), Term::constant(Unit::one())), v0(), 1));
  out.push_back(eq("3d", Term::odot(v0(), Term::constant(Unit::zero())),
                   Term::constant(Unit::zero()), 1));

  // 4: oplus/odot distribute over join/meet.
  out.push_back(eq("4a", Term::oplus(Term::join(v0(), v1()), v2()),
                   Term::join(Term::oplus(v0(), v2()), Term::oplus(v1(), v2())), 3));
  out.push_back(eq("4b", Term::oplus(Term::meet(v0(), v1()), v2()),
                   Term::meet(Term::oplus(v0(), v2()), Term::oplus(v1(), v2())), 3));
  out.push_back(eq("4c", Term::odot(Term::join(v0(), v1()), v2()),
                   Term::join(Term::odot(v0(), v2()), Term::odot(v1(), v2())), 3));
  out.push_back(eq("4d", Term::odot(Term::meet(v0(), v1()), v2()),
                   Term::meet(Term::odot(v0(), v2()), Term::odot(v1(), v2())), 3));

  // 5: (a+b).c <= a+(b.c)
  out.push_back(ineq(AxiomId{"5", {}}, Term::odot(Term::oplus(v0(), v1()), v2()),
                     Term::oplus(v0(), Term::odot(v1(), v2())), 3));

  DyadicGrid grid(opts.constant_grid);
  // 6/7: the residuation bounds, one instance per constant lambda.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Unit lambda = grid.at(i);
    out.push_back(ineq(AxiomId{"6", {{"lambda", lambda.str()}}}, v0(),
                       Term::oplus(Term::ominus(v0(), lambda), Term::constant(lambda)), 1));
    out.push_back(ineq(AxiomId{"7", {{"lambda", lambda.str()}}},
                       Term::ominus(Term::oplus(v0(), Term::constant(lambda)), lambda), v0(),
                       1));
  }

  // 8: a ^ (b + n.(c.lambda)) <= (a . m.(c+lambda)) v b
  for (unsigned n = 0; n <= opts.nm_bound; ++n) {
    for (unsigned m = 0; m <= opts.nm_bound; ++m) {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        Unit lambda = grid.at(i);
        Term lhs = v1();
        for (unsigned k = 0; k < n; ++k) {
          lhs = Term::oplus(lhs, Term::odot(v2(), Term::constant(lambda)));
        }
        lhs = Term::meet(v0(), lhs);
        Term rhs = v0();
        for (unsigned k = 0; k < m; ++k) {
          rhs = Term::odot(rhs, Term::oplus(v2(), Term::constant(lambda)));
        }
        rhs = Term::join(rhs, v1());
        out.push_back(ineq(AxiomId{"8",
                                   {{"n", std::to_string(n)},
                                    {"m", std::to_string(m)},
                                    {"lambda", lambda.str()}}},
                           std::move(lhs), std::move(rhs), 3));
      }
    }
  }

  // 9-12: constant tables, gamma read off the scalar carrier exactly.
  struct TableOp {
    const char* code;
    Unit (*scalar)(const Unit&, const Unit&);
    Term (*term)(Term, Term);
  };
  const TableOp tables[] = {
      {"9", &join, &Term::join},
      {"10", &meet, &Term::meet},
      {"11", &oplus, &Term::oplus},
      {"12", &odot, &Term::odot},
  };
  for (const TableOp& table : tables) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = 0; j < grid.size(); ++j) {
        Unit alpha = grid.at(i);
        Unit beta = grid.at(j);
        Unit gamma = table.scalar(alpha, beta);
        out.push_back(EquationInstance{
            AxiomId{table.code,
                    {{"alpha", alpha.str()}, {"beta", beta.str()}, {"gamma", gamma.str()}}},
            table.term(Term::constant(alpha), Term::constant(beta)),
            Term::constant(gamma), 0});
      }
    }
  }

  return out;
}

ConformanceReport check_axiom(const Algebra& algebra, const EquationInstance& axiom,
                              const Strategy& strategy) {
  return check_equation(algebra, axiom, strategy);
}

std::vector<ConformanceReport> check_all_mc(const Algebra& algebra, const Strategy& strategy,
                                            const AxiomOptions& opts) {
  std::vector<ConformanceReport> out;
  for (const EquationInstance& axiom : mc_axiom_instances(opts)) {
    out.push_back(check_equation(algebra, axiom, strategy));
  }
  return out;
}

namespace {

/// Element pool for the per-element delta checks.
std::vector<Element> element_pool(const Algebra& algebra, const Strategy& strategy,
                                  const AxiomId& id) {
  if (strategy.kind == Strategy::Kind::Exhaustive) {
    return algebra.enumerate(DyadicGrid(strategy.grid_exponent));
  }
  Rng rng = rng_for(strategy, id);
  std::vector<Element> pool;
  pool.reserve(strategy.samples);
  for (std::size_t i = 0; i < strategy.samples; ++i) pool.push_back(algebra.sample(rng));
  return pool;
}

struct SequenceDraw {
  std::vector<Element> prefix;
  Element tail;
};

SequenceDraw draw_sequence(const Algebra& algebra, Rng& rng, const AxiomOptions& opts) {
  std::size_t len = 1 + rng.below(opts.max_prefix);
  std::vector<Element> prefix;
  prefix.reserve(len);
  for (std::size_t i = 0; i < len; ++i) prefix.push_back(algebra.sample(rng));
  return SequenceDraw{std::move(prefix), algebra.sample(rng)};
}

std::string render_sequence(const SequenceDraw& seq) {
  std::ostringstream out;
  out << "(";
  for (const Element& e : seq.prefix) out << e.render() << ", ";
  out << seq.tail.render() << ", " << seq.tail.render() << ", ...)";
  return out.str();
}

Element sequence_entry(const SequenceDraw& seq, std::size_t i) {
  return i < seq.prefix.size() ? seq.prefix[i] : seq.tail;
}

}  // namespace

std::vector<ConformanceReport> check_mc_infty(const Algebra& algebra, const Strategy& strategy,
                                              const AxiomOptions& opts) {
  std::vector<ConformanceReport> out;

  // D1: delta(x, x, x, ...) = x.
  {
    AxiomId id{"D1", {}};
    ConformanceReport report;
    report.id = id;
    report.strategy = strategy.str();
    for (const Element& x : element_pool(algebra, strategy, id)) {
      ++report.cases;
      Element d = algebra.delta_eventually_constant({&x, 1}, x);
      if (!algebra.equal(d, x)) {
        report.passed = false;
        report.counterexample = Counterexample{{x}, {x.render()}, "delta = " + d.render()};
        break;
      }
    }
    out.push_back(std::move(report));
  }

  // D2: delta(x*) <= delta(x* v y*), on eventually constant sequences.
  {
    AxiomId id{"D2", {}};
    ConformanceReport report;
    report.id = id;
    report.strategy = strategy.str();
    Rng rng = rng_for(strategy, id);
    for (std::size_t s = 0; s < opts.sequence_samples; ++s) {
      SequenceDraw xs = draw_sequence(algebra, rng, opts);
      SequenceDraw ys = draw_sequence(algebra, rng, opts);
      std::size_t len = std::max(xs.prefix.size(), ys.prefix.size());
      std::vector<Element> zs;
      for (std::size_t i = 0; i < len; ++i) {
        zs.push_back(algebra.apply(OpSym::Join, sequence_entry(xs, i), sequence_entry(ys, i)));
      }
      Element ztail = algebra.apply(OpSym::Join, xs.tail, ys.tail);
      ++report.cases;
      Element dx = algebra.delta_eventually_constant(xs.prefix, xs.tail);
      Element dz = algebra.delta_eventually_constant(zs, ztail);
      if (!algebra.leq(dx, dz)) {
        report.passed = false;
        report.counterexample =
            Counterexample{{},
                           {},
                           "delta" + render_sequence(xs) + " = " + dx.render() +
                               " above the joined delta " + dz.render()};
        break;
      }
    }
    out.push_back(std::move(report));
  }

  // D3: the chain x - 1/2^i is HNN-Cauchy with rho fixpoint, and its gap
  // below x vanishes at depth delta_depth.
  {
    AxiomId id{"D3", {}};
    ConformanceReport report;
    report.id = id;
    report.strategy = strategy.str();
    for (const Element& x : element_pool(algebra, strategy, id)) {
      ++report.cases;
      std::vector<Element> chain;
      for (unsigned i = 0; i <= opts.delta_depth; ++i) {
        chain.push_back(algebra.ominus(x, dyadic(i)));
      }
      std::optional<std::string> problem;
      HnnReport hnn = algebra.is_hnn_cauchy(chain);
      if (!hnn.ok) {
        problem = "chain not HNN-Cauchy at index " + std::to_string(hnn.first_violation);
      }
      for (std::size_t i = 0; !problem && i < chain.size(); ++i) {
        Element rho = algebra.rho(std::span<const Element>(chain.data(), i + 1));
        if (!algebra.equal(rho, chain[i])) {
          problem = "rho_" + std::to_string(i) + " = " + rho.render() + " != " +
                    chain[i].render();
        }
      }
      if (!problem) {
        if (!algebra.leq(chain.back(), x)) {
          problem = "chain exceeds x";
        } else if (algebra.dist_up(chain.back(), x) > dyadic(opts.delta_depth)) {
          problem = "gap " + algebra.dist_up(chain.back(), x).str() + " above 1/2^" +
                    std::to_string(opts.delta_depth);
        }
      }
      if (problem) {
        report.passed = false;
        report.counterexample = Counterexample{{x}, {x.render()}, *problem};
        break;
      }
    }
    out.push_back(std::move(report));
  }

  // D4: rho_n <= delta <= rho_n + 1/2^(n-1) for n up to delta_depth.
  {
    AxiomId id{"D4", {{"n", "0.." + std::to_string(opts.delta_depth)}}};
    ConformanceReport report;
    report.id = id;
    report.strategy = strategy.str();
    Rng rng = rng_for(strategy, id);
    for (std::size_t s = 0; s < opts.sequence_samples; ++s) {
      SequenceDraw seq = draw_sequence(algebra, rng, opts);
      ++report.cases;
      Element d = algebra.delta_eventually_constant(seq.prefix, seq.tail);
      std::optional<std::string> problem;
      std::vector<Element> entries;
      for (std::size_t n = 0; !problem && n <= opts.delta_depth; ++n) {
        entries.push_back(sequence_entry(seq, n));
        Element rho = algebra.rho(entries);
        Element upper = algebra.apply(OpSym::Oplus, rho, algebra.constant(hnn_gap(n)));
        if (!algebra.leq(rho, d)) {
          problem = "rho_" + std::to_string(n) + " = " + rho.render() +
                    " above delta = " + d.render();
        } else if (!algebra.leq(d, upper)) {
          problem = "delta = " + d.render() + " above rho_" + std::to_string(n) +
                    " + 1/2^(n-1) = " + upper.render();
        }
      }
      if (problem) {
        report.passed = false;
        report.counterexample =
            Counterexample{{}, {}, "sequence " + render_sequence(seq) + ": " + *problem};
        break;
      }
    }
    out.push_back(std::move(report));
  }

  return out;
}

std::vector<ConformanceReport> check_derived(const Algebra& algebra, const Strategy& strategy,
                                             const AxiomOptions& opts) {
  std::vector<ConformanceReport> out;

  out.push_back(run_assignments(
      algebra, AxiomId{"mono-oplus", {}}, 3, strategy,
      [&](std::span<const Element> xs) -> std::optional<std::string> {
        if (!algebra.leq(xs[0], xs[1])) return std::nullopt;
        Element l = algebra.apply(OpSym::Oplus, xs[0], xs[2]);
        Element r = algebra.apply(OpSym::Oplus, xs[1], xs[2]);
        if (algebra.leq(l, r)) return std::nullopt;
        return "a <= b but a+c = " + l.render() + " above b+c = " + r.render();
      }));

  out.push_back(run_assignments(
      algebra, AxiomId{"mono-odot", {}}, 3, strategy,
      [&](std::span<const Element> xs) -> std::optional<std::string> {
        if (!algebra.leq(xs[0], xs[1])) return std::nullopt;
        Element l = algebra.apply(OpSym::Odot, xs[0], xs[2]);
        Element r = algebra.apply(OpSym::Odot, xs[1], xs[2]);
        if (algebra.leq(l, r)) return std::nullopt;
        return "a <= b but a.c = " + l.render() + " above b.c = " + r.render();
      }));

  DyadicGrid grid(opts.constant_grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    Unit lambda = grid.at(i);
    out.push_back(run_assignments(
        algebra, AxiomId{"residuation", {{"lambda", lambda.str()}}}, 2, strategy,
        [&](std::span<const Element> xs) -> std::optional<std::string> {
          bool below_sum = algebra.leq(xs[1], algebra.apply(OpSym::Oplus, xs[0],
                                                            algebra.constant(lambda)));
          bool diff_below = algebra.leq(algebra.ominus(xs[1], lambda), xs[0]);
          if (below_sum == diff_below) return std::nullopt;
          return std::string("y <= x+lambda is ") + (below_sum ? "true" : "false") +
                 " but y-lambda <= x is " + (diff_below ? "true" : "false");
        }));
  }

  out.push_back(run_assignments(
      algebra, AxiomId{"triangle-dup", {}}, 3, strategy,
      [&](std::span<const Element> xs) -> std::optional<std::string> {
        Unit xz = algebra.dist_up(xs[0], xs[2]);
        Unit bound = oplus(algebra.dist_up(xs[0], xs[1]), algebra.dist_up(xs[1], xs[2]));
        if (xz <= bound) return std::nullopt;
        return "dist_up(x,z) = " + xz.str() + " above " + bound.str();
      }));

  out.push_back(run_assignments(
      algebra, AxiomId{"triangle-dist", {}}, 3, strategy,
      [&](std::span<const Element> xs) -> std::optional<std::string> {
        Unit xz = algebra.dist(xs[0], xs[2]).dist;
        Unit bound = oplus(algebra.dist(xs[0], xs[1]).dist, algebra.dist(xs[1], xs[2]).dist);
        if (xz <= bound) return std::nullopt;
        return "dist(x,z) = " + xz.str() + " above " + bound.str();
      }));

  out.push_back(run_assignments(
      algebra, AxiomId{"dup-zero", {}}, 2, strategy,
      [&](std::span<const Element> xs) -> std::optional<std::string> {
        if (algebra.dist_up(xs[0], xs[0]) != Unit::zero()) return "dist_up(x,x) != 0";
        if (algebra.leq(xs[0], xs[1]) &&
            algebra.dist_up(xs[1], xs[0]) != Unit::zero()) {
          return "x <= y but dist_up(y,x) = " + algebra.dist_up(xs[1], xs[0]).str();
        }
        return std::nullopt;
      }));

  return out;
}

}  // namespace mcalg
