#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcalg/algebra.hpp"
#include "mcalg/term.hpp"

namespace mcalg {

/// Identifies one axiom-schema instance: a group tag (1a-1j, 2a-2d, 3a-3d,
/// 4a-4d, 5, 6, 7, 8, 9-12, D1-D4, or a derived-lemma tag) plus its schema
/// parameters, rendered deterministically.
struct AxiomId {
  std::string code;
  std::vector<std::pair<std::string, std::string>> params;

  std::string str() const;
};

struct Counterexample {
  std::vector<Element> assignment;
  std::vector<std::string> rendered;  // one entry per variable, same order
  std::string detail;                 // the violated relation, evaluated

  /// Deterministic "x0=..., x1=...; detail" form.
  std::string str() const;
};

struct ConformanceReport {
  AxiomId id;
  std::string strategy;
  bool passed = true;
  std::size_t cases = 0;
  std::optional<Counterexample> counterexample;

  std::string line() const;
};

struct Strategy {
  enum class Kind { Exhaustive, Sampled };

  Kind kind = Kind::Exhaustive;
  unsigned grid_exponent = 3;  // exhaustive: enumerate the carrier on this grid
  std::size_t samples = 200;   // sampled: assignments per axiom
  std::uint64_t seed = 0;

  static Strategy exhaustive(unsigned grid_exponent);
  static Strategy sampled(std::size_t samples, std::uint64_t seed);

  std::string str() const;
};

struct AxiomOptions {
  /// lambda/alpha/beta constants range over DyadicGrid(constant_grid).
  unsigned constant_grid = 3;
  /// Axiom 8 is an unbounded schema over n,m; instances are generated for
  /// n,m <= nm_bound (the grid evaluation saturates beyond that).
  unsigned nm_bound = 3;
  /// Depth bound for the delta sandwich (D4) and the D3 evidence chain.
  unsigned delta_depth = 8;
  /// Number of random sequences for D2/D4.
  std::size_t sequence_samples = 100;
  /// Longest explicit prefix of a random sequence.
  std::size_t max_prefix = 6;
};

/// One finitary axiom as a pair of terms over variables var(0..vars-1);
/// inequalities s <= t are rendered equationally as meet(s,t) = s.
struct EquationInstance {
  AxiomId id;
  Term lhs;
  Term rhs;
  std::size_t vars;
};

/// All instances of axiom groups 1-12 at the configured bounds. The
/// constant tables 9-12 assert alpha op beta = gamma with gamma read off
/// the scalar carrier exactly.
std::vector<EquationInstance> mc_axiom_instances(const AxiomOptions& opts);

ConformanceReport check_axiom(const Algebra& algebra, const EquationInstance& axiom,
                              const Strategy& strategy);

std::vector<ConformanceReport> check_all_mc(const Algebra& algebra, const Strategy& strategy,
                                            const AxiomOptions& opts);

/// The four delta axioms. D1/D2/D4 evaluate delta through its closed form
/// on eventually constant sequences; D3 checks the dyadic-ominus chain
/// exactly (HNN property, rho fixpoint, and the vanishing gap at the
/// configured depth).
std::vector<ConformanceReport> check_mc_infty(const Algebra& algebra, const Strategy& strategy,
                                              const AxiomOptions& opts);

/// Derived-lemma properties: operation monotonicity, residuation,
/// triangle inequalities for both metrics, and vanishing of dist_up along
/// the order.
std::vector<ConformanceReport> check_derived(const Algebra& algebra, const Strategy& strategy,
                                             const AxiomOptions& opts);

}  // namespace mcalg
