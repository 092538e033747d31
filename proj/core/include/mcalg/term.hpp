#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcalg/rational.hpp"

namespace mcalg {

class SequenceSpec;

enum class TermKind {
  Var,
  Const,
  Oplus,
  Odot,
  Join,
  Meet,
  OminusConst,
  Delta,
};

/// Immutable term tree over the signature {oplus, odot, join, meet,
/// constants, ominus-by-constant} plus the infinitary delta. Copies are
/// cheap (shared nodes).
class Term {
public:
  static Term var(std::size_t index);
  static Term constant(Unit value);
  static Term oplus(Term lhs, Term rhs);
  static Term odot(Term lhs, Term rhs);
  static Term join(Term lhs, Term rhs);
  static Term meet(Term lhs, Term rhs);
  static Term ominus(Term arg, Unit lambda);
  static Term delta(SequenceSpec spec);

  /// Left-associated join/oplus/odot/meet chains; args must be nonempty.
  static Term join_all(std::span<const Term> args);
  static Term oplus_all(std::span<const Term> args);

  TermKind kind() const;
  std::size_t var_index() const;
  const Unit& const_value() const;
  Term lhs() const;
  Term rhs() const;
  Term child() const;          // OminusConst argument
  const Unit& lambda() const;  // OminusConst constant
  const SequenceSpec& spec() const;

  /// 1 + max variable index occurring in the term, or 0 when closed.
  std::size_t arity() const;

  /// Structural equality. Generator specs compare by identity.
  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

private:
  struct Node;
  static Term binary(TermKind kind, Term lhs, Term rhs);
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Finite description of a countable argument sequence for delta.
class SequenceSpec {
public:
  enum class Kind {
    ExplicitThenConstant,  // t0, ..., t_{k-1}, tail, tail, ...
    OminusDyadic,          // x - 1/2^0, x - 1/2^1, x - 1/2^2, ... (truncated)
    ConstantSeq,           // x, x, x, ...
    Generator,             // opaque index -> term rule
  };

  static SequenceSpec explicit_then_constant(std::vector<Term> prefix, Term tail);
  static SequenceSpec ominus_dyadic(Term base);
  static SequenceSpec constant_seq(Term value);
  /// An opaque rule; `available`, when set, bounds how many entries the
  /// rule can produce (requesting more is an error, not truncation).
  static SequenceSpec generator(std::function<Term(std::size_t)> rule,
                                std::optional<std::size_t> available = {});

  Kind kind() const { return kind_; }
  const std::vector<Term>& prefix() const { return prefix_; }
  const Term& tail() const { return terms_.front(); }
  const Term& base() const { return terms_.front(); }
  const Term& value() const { return terms_.front(); }

  /// The i-th entry of the described sequence, as a term.
  /// Throws NotSupportedError when a Generator cannot supply entry i.
  Term entry(std::size_t i) const;

  bool operator==(const SequenceSpec& other) const;

private:
  SequenceSpec(Kind kind, std::vector<Term> prefix, std::vector<Term> terms)
      : kind_(kind), prefix_(std::move(prefix)), terms_(std::move(terms)) {}

  Kind kind_;
  std::vector<Term> prefix_;  // ExplicitThenConstant only
  std::vector<Term> terms_;   // tail / base / value
  std::shared_ptr<const std::function<Term(std::size_t)>> rule_;
  std::optional<std::size_t> available_;
};

/// Variable assignment for evaluation.
class Environment {
public:
  Environment() = default;
  Environment(std::initializer_list<std::pair<const std::size_t, Unit>> init)
      : bindings_(init) {}

  void bind(std::size_t index, Unit value) { bindings_[index] = std::move(value); }

  /// Throws UnboundVariableError when the index has no binding.
  const Unit& lookup(std::size_t index) const;

  bool covers(std::size_t index) const { return bindings_.count(index) != 0; }

private:
  std::map<std::size_t, Unit> bindings_;
};

/// A guaranteed enclosure [lo, hi] of an evaluation.
struct Interval {
  Unit lo;
  Unit hi;

  Unit width() const { return ominus(hi, lo); }
  bool contains(const Unit& v) const { return lo <= v && v <= hi; }
};

/// The term rho_n in variables x0..xn:
///   rho_0(x0) = x0
///   rho_{n+1}(x0..x_{n+1}) = (x0 v ... v x_{n+1}) ^ (rho_n(x0..xn) + 1/2^n)
Term rho_term(std::size_t n);

/// rho evaluated on scalar values xs = (x0, ..., xn).
Unit rho_value(std::span<const Unit> xs);

/// Exact structural evaluation. The term must be delta-free and the
/// environment must cover its variables.
Unit eval_finitary(const Term& term, const Environment& env);

/// Exact limit of delta on the structured spec variants:
///   ConstantSeq(x) -> x,  OminusDyadic(x) -> x,
///   ExplicitThenConstant -> min(join of all entries, rho_N + 1/2^(N-1))
/// where N is the step at which the running join stabilizes.
/// Entries must be delta-free; Generator specs are not supported here.
Unit eval_delta_exact(const SequenceSpec& spec, const Environment& env);

/// Closed form of the limit for an eventually constant scalar sequence
/// (prefix entries followed by tail forever). Prefix may be empty.
Unit delta_eventually_constant(std::span<const Unit> prefix, const Unit& tail);

/// Guaranteed enclosure of width <= epsilon. Each delta node at depth d of
/// the tree gets a slack allowance of epsilon/2^(d+1) and is replaced by
/// the sandwich [rho_n, rho_n + 1/2^(n-1)]; endpoints propagate through
/// the finitary operations, which are all monotone.
Interval eval_with_precision(const Term& term, const Environment& env,
                             const Unit& epsilon);

}  // namespace mcalg
