#include "mcalg/stone_weierstrass.hpp"

#include "mcalg/errors.hpp"

namespace mcalg {

std::vector<Unit> eval_term_on_poset(const PosetPtr& poset,
                                     std::span<const MonotoneMap> generators,
                                     const Term& term) {
  std::vector<Unit> out;
  out.reserve(poset->size());
  for (std::size_t p = 0; p < poset->size(); ++p) {
    Environment env;
    for (std::size_t i = 0; i < generators.size(); ++i) env.bind(i, generators[i].at(p));
    out.push_back(eval_finitary(term, env));
  }
  return out;
}

SeparationCheck check_separation(const PosetPtr& poset,
                                 std::span<const MonotoneMap> generators) {
  for (std::size_t x = 0; x < poset->size(); ++x) {
    for (std::size_t y = 0; y < poset->size(); ++y) {
      if (poset->leq(y, x)) continue;  // x >= y: nothing to separate
      bool found = false;
      for (const MonotoneMap& g : generators) {
        if (g.at(x) < g.at(y)) {
          found = true;
          break;
        }
      }
      if (!found) return {false, std::pair{x, y}};
    }
  }
  return {true, std::nullopt};
}

SeparatorInfo separator_term(const PosetPtr& poset,
                             std::span<const MonotoneMap> generators, std::size_t x,
                             std::size_t y) {
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const Unit& at_x = generators[g].at(x);
    const Unit& at_y = generators[g].at(y);
    if (!(at_x < at_y)) continue;

    Unit cut{(at_x.value() + at_y.value()) / 2};
    Rational gap = cut.value() - at_x.value();
    BigInt copies_big = (numerator(gap) + denominator(gap) - 1) / numerator(gap);  // ceil(1/gap)
    unsigned copies = static_cast<unsigned>(copies_big);

    Term base = Term::ominus(Term::var(g), at_x);
    Term term = base;
    for (unsigned i = 1; i < copies; ++i) term = Term::oplus(term, base);
    return SeparatorInfo{y, g, std::move(cut), copies, std::move(term)};
  }
  throw SeparationError(poset->name(x), poset->name(y));
}

ApproximationResult approximate(const PosetPtr& poset,
                                std::span<const MonotoneMap> generators,
                                const MonotoneMap& target, const Unit& epsilon) {
  if (epsilon == Unit::zero()) throw RangeError("epsilon must be positive");
  if (target.size() != poset->size()) {
    throw CarrierMismatchError("target is not a map on the poset");
  }

  std::size_t n = poset->size();
  ApproximationTrace trace;
  trace.epsilon = epsilon;

  if (n == 0) {
    trace.term = Term::constant(Unit::zero());
    trace.error = Unit::zero();
    return {trace.term, std::move(trace)};
  }

  auto strictly_below_plus_eps = [&](const Unit& a, const Unit& b) {
    return a.value() < b.value() + epsilon.value();
  };

  std::vector<bool> covered(n, false);
  std::size_t covered_count = 0;

  for (std::size_t x = 0; x < n && covered_count < n; ++x) {
    if (covered[x]) continue;

    AnchorTrace anchor;
    anchor.anchor = x;
    anchor.anchor_value = target.at(x);

    // U = {z : psi(z) < psi(x) + eps}; every y outside satisfies x not >= y,
    // so a separator exists whenever the generators separate the poset.
    for (std::size_t z = 0; z < n; ++z) {
      if (!strictly_below_plus_eps(target.at(z), target.at(x))) anchor.outside.push_back(z);
    }

    std::vector<Unit> values(n, anchor.anchor_value);
    std::optional<Term> term;
    for (std::size_t y : anchor.outside) {
      SeparatorInfo sep = separator_term(poset, generators, x, y);
      std::vector<Unit> sep_values = eval_term_on_poset(poset, generators, sep.term);
      for (std::size_t z = 0; z < n; ++z) values[z] = oplus(values[z], sep_values[z]);
      term = term ? Term::oplus(std::move(*term), sep.term) : sep.term;
      anchor.separators.push_back(std::move(sep));
    }
    anchor.term = term ? Term::oplus(std::move(*term), Term::constant(anchor.anchor_value))
                       : Term::constant(anchor.anchor_value);
    anchor.values = std::move(values);

    for (std::size_t z = 0; z < n; ++z) {
      if (strictly_below_plus_eps(anchor.values[z], target.at(z))) anchor.improved.push_back(z);
    }

    bool enlarges = false;
    for (std::size_t z : anchor.improved) {
      if (!covered[z]) {
        covered[z] = true;
        ++covered_count;
        enlarges = true;
      }
    }
    if (enlarges) trace.anchors.push_back(std::move(anchor));
  }

  Term phi = trace.anchors.front().term;
  for (std::size_t i = 1; i < trace.anchors.size(); ++i) {
    phi = Term::meet(std::move(phi), trace.anchors[i].term);
  }
  trace.term = phi;
  trace.values = eval_term_on_poset(poset, generators, phi);
  trace.error = Unit::zero();
  for (std::size_t z = 0; z < n; ++z) {
    trace.error = join(trace.error, dist(trace.values[z], target.at(z)));
  }
  if (trace.error > epsilon) {
    throw Error("certificate violation: achieved error " + trace.error.str() +
                " above epsilon " + epsilon.str());
  }
  return {phi, std::move(trace)};
}

}  // namespace mcalg
