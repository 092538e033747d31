#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mcalg/poset.hpp"
#include "mcalg/term.hpp"

namespace mcalg {

/// Evaluates a term whose variables index the generator family, pointwise
/// over the poset.
std::vector<Unit> eval_term_on_poset(const PosetPtr& poset,
                                     std::span<const MonotoneMap> generators,
                                     const Term& term);

struct SeparationCheck {
  bool separating;
  /// A pair (x, y) with x not >= y that no generator witnesses, when any.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
};

/// True iff every pair with x not >= y has a generator phi with
/// phi(x) < phi(y) -- the hypothesis of the approximation theorem.
SeparationCheck check_separation(const PosetPtr& poset,
                                 std::span<const MonotoneMap> generators);

struct SeparatorInfo {
  std::size_t target;     // the point y pushed to value 1
  std::size_t generator;  // index of the generator phi used
  Unit cut;               // c with phi(x) < c < phi(y)
  unsigned copies;        // n with n(c - phi(x)) >= 1
  Term term;              // n-fold oplus of (phi ominus phi(x))
};

/// Builds the scaled separator for x against y: a term with value 0 at x
/// and 1 on {z : phi(z) > c}. Picks the first generator with
/// phi(x) < phi(y), the midpoint cut, and the least n.
/// Throws SeparationError when no generator separates the pair.
SeparatorInfo separator_term(const PosetPtr& poset,
                             std::span<const MonotoneMap> generators, std::size_t x,
                             std::size_t y);

struct AnchorTrace {
  std::size_t anchor;                    // x
  Unit anchor_value;                     // lambda = psi(x)
  std::vector<std::size_t> outside;      // X minus U = {z : psi(z) < psi(x) + eps}
  std::vector<SeparatorInfo> separators; // one alpha_y per outside point
  Term term = Term::constant(Unit::zero());  // phi_x = alpha_y1 + ... + alpha_yk + lambda
  std::vector<Unit> values;              // phi_x on X
  std::vector<std::size_t> improved;     // V_x = {z : phi_x(z) < psi(z) + eps}
};

struct ApproximationTrace {
  Unit epsilon;
  std::vector<AnchorTrace> anchors;
  Term term = Term::constant(Unit::zero());  // phi = meet over anchors of phi_x
  std::vector<Unit> values; // phi on X
  Unit error;               // max over X of |target - phi|
};

struct ApproximationResult {
  Term term;
  ApproximationTrace trace;
};

/// The constructive ordered approximation: anchors are visited in element
/// order and kept when their V_x enlarges the cover; returns the meet of
/// the per-anchor upper envelopes together with the checked certificate
/// (error is re-evaluated exhaustively and is <= epsilon on success).
/// Throws SeparationError when the generators cannot separate a needed
/// pair, RangeError when epsilon is zero.
ApproximationResult approximate(const PosetPtr& poset,
                                std::span<const MonotoneMap> generators,
                                const MonotoneMap& target, const Unit& epsilon);

}  // namespace mcalg
