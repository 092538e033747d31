#include "mcalg/duality.hpp"

#include <sstream>

#include "mcalg/errors.hpp"

namespace mcalg {

namespace {

std::vector<MonotoneMap> canonical_family(const PreorderPtr& domain) {
  std::vector<MonotoneMap> family;
  family.reserve(domain->size());
  for (std::size_t x = 0; x < domain->size(); ++x) {
    family.push_back(MonotoneMap::complement_down_indicator(domain, x));
  }
  return family;
}

DualSpace from_quotient(QuotientResult q) {
  return DualSpace{std::move(q.classes), std::move(q.projection), std::move(q.representative)};
}

std::string render_values(const MonotoneMap& m) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out << ", ";
    out << m.domain()->name(i) << ":" << m.at(i).str();
  }
  out << "}";
  return out.str();
}

}  // namespace

DualSpace max_of_generated(const PreorderPtr& domain,
                           std::span<const MonotoneMap> generators) {
  return from_quotient(quotient_by_kernel(domain, generators));
}

EtaResult unit_eta(const PreorderPtr& domain) {
  std::vector<MonotoneMap> family = canonical_family(domain);
  DualSpace max = from_quotient(quotient_by_kernel(domain, family));

  UnitReport report;
  // Injectivity: no two points may share a class.
  std::vector<std::optional<std::size_t>> seen(max.space->size());
  for (std::size_t x = 0; x < domain->size() && report.injective; ++x) {
    std::size_t c = max.point_map[x];
    if (seen[c]) {
      report.injective = false;
      report.merged = std::pair{domain->name(*seen[c]), domain->name(x)};
    } else {
      seen[c] = x;
    }
  }
  // Surjectivity: every class arises as some ev_x; classes are built from
  // points, so a class without preimage would be a defect.
  std::vector<bool> hit(max.space->size(), false);
  for (std::size_t x = 0; x < domain->size(); ++x) hit[max.point_map[x]] = true;
  for (std::size_t c = 0; c < hit.size(); ++c) {
    if (!hit[c]) {
      report.surjective = false;
      report.failing_target = max.space->name(c);
    }
  }
  // Order: x <= y in X iff ev_x <= ev_y in Max.
  for (std::size_t x = 0; x < domain->size() && report.order_iso; ++x) {
    for (std::size_t y = 0; y < domain->size(); ++y) {
      if (domain->leq(x, y) != max.space->leq(max.point_map[x], max.point_map[y])) {
        report.order_iso = false;
        report.order_violation = std::pair{domain->name(x), domain->name(y)};
        break;
      }
    }
  }
  return EtaResult{std::move(max), std::move(report)};
}

EpsilonResult unit_epsilon(const PosetPtr& domain,
                           std::span<const MonotoneMap> generators, const Unit& epsilon,
                           std::span<const MonotoneMap> targets) {
  DualSpace max = max_of_generated(domain, generators);

  UnitReport report;
  report.epsilon = epsilon;

  // The generated elements are maps, so ev is injective as soon as the
  // pushed-forward maps stay distinct; checked on the generator family.
  std::vector<MonotoneMap> pushed;
  pushed.reserve(generators.size());
  for (const MonotoneMap& g : generators) {
    std::vector<Unit> values;
    values.reserve(max.space->size());
    for (std::size_t c = 0; c < max.space->size(); ++c) values.push_back(g.at(max.witness[c]));
    pushed.push_back(MonotoneMap(max.space, std::move(values)));
  }
  for (std::size_t i = 0; i < generators.size() && report.injective; ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      bool same_on_x = generators[i] == generators[j];
      bool same_on_max = pushed[i] == pushed[j];
      if (same_on_x != same_on_max) {
        report.injective = false;
        report.merged = std::pair{render_values(generators[i]), render_values(generators[j])};
        break;
      }
    }
  }

  for (const MonotoneMap& target : targets) {
    if (target.size() != max.space->size()) {
      throw CarrierMismatchError("target is not a map on the computed Max space");
    }
    ApproximationResult run = approximate(max.space, pushed, target, epsilon);
    report.certificates.push_back(
        ApproxCertificate{render_values(target), run.term, run.trace.error});
    if (run.trace.error > epsilon) {
      report.surjective = false;
      report.failing_target = render_values(target);
    }
  }
  return EpsilonResult{std::move(max), std::move(report)};
}

MonotoneMap pullback(const PosetMap& g, const MonotoneMap& f) {
  if (!g.is_monotone()) throw MonotonicityError("the map between posets is not monotone");
  if (f.size() != g.cod->size()) {
    throw CarrierMismatchError("function is not a map on the codomain");
  }
  std::vector<Unit> values;
  values.reserve(g.dom->size());
  for (std::size_t x = 0; x < g.dom->size(); ++x) values.push_back(f.at(g.images[x]));
  return MonotoneMap(g.dom, std::move(values));
}

std::vector<std::size_t> pushforward_on_max(const PosetMap& g, const DualSpace& max_x,
                                            const DualSpace& max_y) {
  if (!g.is_monotone()) throw MonotonicityError("the map between posets is not monotone");
  std::vector<MonotoneMap> family_y = canonical_family(g.cod);

  std::vector<std::size_t> out;
  out.reserve(max_x.space->size());
  for (std::size_t c = 0; c < max_x.space->size(); ++c) {
    std::size_t image_point = g.images[max_x.witness[c]];
    // Match the composite evaluation against each class of Max C(Y) on the
    // canonical family.
    std::optional<std::size_t> match;
    for (std::size_t d = 0; d < max_y.space->size() && !match; ++d) {
      bool agrees = true;
      for (const MonotoneMap& psi : family_y) {
        if (psi.at(image_point) != psi.at(max_y.witness[d])) {
          agrees = false;
          break;
        }
      }
      if (agrees) match = d;
    }
    if (!match) throw Error("no class of Max C(Y) matches the composite evaluation");
    out.push_back(*match);
  }
  return out;
}

}  // namespace mcalg
