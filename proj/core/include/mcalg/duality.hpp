#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mcalg/poset.hpp"
#include "mcalg/stone_weierstrass.hpp"
#include "mcalg/term.hpp"

namespace mcalg {

/// Max of an algebra of functions, computed as a finite quotient of the
/// presenting space: points are kernel classes of the generating family,
/// ordered by "below in every map"; each point carries the evaluation at
/// its class representative as witness.
struct DualSpace {
  PosetPtr space;
  std::vector<std::size_t> point_map;  // domain index -> Max index
  std::vector<std::size_t> witness;    // Max index -> representative domain index
};

DualSpace max_of_generated(const PreorderPtr& domain,
                           std::span<const MonotoneMap> generators);

struct ApproxCertificate {
  std::string target;  // rendered target values
  Term term;
  Unit error;
};

/// Outcome of checking a unit map. unit_eta fills the first three flags;
/// unit_epsilon reads "surjective" at the requested precision and attaches
/// one certificate per target.
struct UnitReport {
  bool injective = true;
  std::optional<std::pair<std::string, std::string>> merged;  // collapsed point pair
  bool surjective = true;
  std::optional<std::string> failing_target;
  bool order_iso = true;
  std::optional<std::pair<std::string, std::string>> order_violation;
  Unit epsilon;  // unit_epsilon only
  std::vector<ApproxCertificate> certificates;

  bool ok() const { return injective && surjective && order_iso; }
};

struct EtaResult {
  DualSpace max;  // Max(C(X)) via the canonical up-set-indicator family
  UnitReport report;
};

/// Computes Max(C(X)) through the separating family of up-set indicators
/// and checks that x |-> ev_x is a bijective order-isomorphism. On a
/// poset all three flags hold; a genuine preorder (with a cycle) collapses
/// the cycle and reports non-injectivity.
EtaResult unit_eta(const PreorderPtr& domain);

struct EpsilonResult {
  DualSpace max;
  UnitReport report;
};

/// For the subalgebra of C(X) generated by `generators`: injectivity of
/// a |-> ev_a is checked exactly on the generator family, and density is
/// certified by approximating every target on Max within epsilon.
/// Targets must be maps on the computed Max space.
EpsilonResult unit_epsilon(const PosetPtr& domain,
                           std::span<const MonotoneMap> generators, const Unit& epsilon,
                           std::span<const MonotoneMap> targets);

/// C(g): C(Y) -> C(X) for monotone g: X -> Y, i.e. f |-> f . g.
/// Throws MonotonicityError when g is not monotone.
MonotoneMap pullback(const PosetMap& g, const MonotoneMap& f);

/// Max(C(g)): Max C(X) -> Max C(Y). Each class is sent to the class whose
/// evaluations on the canonical family of Y agree with the composite.
std::vector<std::size_t> pushforward_on_max(const PosetMap& g, const DualSpace& max_x,
                                            const DualSpace& max_y);

}  // namespace mcalg
