#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mcalg/poset.hpp"
#include "mcalg/rational.hpp"
#include "mcalg/rng.hpp"
#include "mcalg/term.hpp"

namespace mcalg {

enum class OpSym { Oplus, Odot, Join, Meet };

const char* op_name(OpSym op);

/// An element of a concrete carrier. The representation varies with the
/// carrier: a rational for the scalar algebra, a monotone map for a
/// function algebra, a tuple for products, and a (term, map) pair for
/// generated subalgebras. Order-dual carriers reuse the inner
/// representation unchanged.
class Element {
public:
  enum class Kind { Scalar, Function, Tuple, Generated };

  static Element scalar(Unit value);
  static Element function(MonotoneMap map);
  static Element tuple(std::vector<Element> parts);
  static Element generated(Term term, MonotoneMap map);

  Kind kind() const;
  const Unit& as_scalar() const;
  const MonotoneMap& as_function() const;
  const std::vector<Element>& as_tuple() const;
  const Term& generating_term() const;
  /// The map behind a Function or Generated element.
  const MonotoneMap& as_map() const;

  std::string render() const;

  /// Structural equality; Generated elements compare by their maps
  /// (two terms denoting the same function are the same element).
  bool operator==(const Element& other) const;
  bool operator!=(const Element& other) const { return !(*this == other); }

private:
  struct Data;
  explicit Element(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

struct DistanceReport {
  Unit d_up_xy;
  Unit d_up_yx;
  Unit dist;
  /// A poset point attaining sup |g - f| on function carriers.
  std::optional<std::string> witness;
};

struct HnnReport {
  bool ok;
  std::size_t first_violation;  // meaningful only when !ok
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A concrete MC-carrier exposing the signature operations, the order,
/// and the metrics. All elements are immutable and handles are read-only
/// after construction.
class Algebra {
public:
  virtual ~Algebra() = default;

  virtual std::string describe() const = 0;

  /// Throws CarrierMismatchError when the element is not of this carrier.
  virtual void validate(const Element& e) const = 0;

  /// Interpretation of the constant symbol `symbol` in this carrier.
  virtual Element constant(const Unit& symbol) const = 0;

  virtual Element apply(OpSym op, const Element& a, const Element& b) const = 0;

  /// x (-) lambda := x (.) (1 - lambda), with (1 - lambda) read as a
  /// constant symbol of the carrier.
  Element ominus(const Element& a, const Unit& lambda) const;

  /// The carrier order.
  virtual bool leq(const Element& a, const Element& b) const = 0;
  bool equal(const Element& a, const Element& b) const {
    return leq(a, b) && leq(b, a);
  }

  /// inf{lambda : y <= x (+) lambda}, computed by the exact per-carrier
  /// formula.
  virtual Unit dist_up(const Element& x, const Element& y) const = 0;

  DistanceReport dist(const Element& x, const Element& y) const;

  /// essinf/esssup: the largest constant below / smallest constant above.
  /// Supported on the scalar and function carriers; on the empty-poset
  /// (trivial) algebra they return 1 and 0 respectively.
  virtual Unit essinf(const Element& x) const;
  virtual Unit esssup(const Element& x) const;
  /// The common value when essinf = esssup, otherwise nullopt.
  std::optional<Unit> ess(const Element& x) const;

  /// Checks a_n <= a_{n+1} <= a_n (+) 1/2^n along the prefix.
  HnnReport is_hnn_cauchy(std::span<const Element> prefix) const;

  /// rho_{k-1}(x_0..x_{k-1}) computed with this carrier's operations.
  Element rho(std::span<const Element> xs) const;

  /// Exact delta of the eventually constant sequence prefix, tail, tail...
  /// Supported where delta has an exact pointwise form (scalar, function).
  virtual Element delta_eventually_constant(std::span<const Element> prefix,
                                            const Element& tail) const;

  virtual bool enumerable() const = 0;
  /// All carrier elements with grid values; throws NotSupportedError or
  /// BudgetExceededError.
  virtual std::vector<Element> enumerate(const DyadicGrid& grid,
                                         std::size_t budget = 1u << 20) const;
  virtual Element sample(Rng& rng) const = 0;

protected:
  /// Hook for dist(): the point attaining the sup, where that makes sense.
  virtual std::optional<std::string> witness_point(const Element& x,
                                                   const Element& y) const;
};

/// The scalar model [0,1]. Virtual so tests can sabotage single operations.
class ScalarAlgebra : public Algebra {
public:
  std::string describe() const override;
  void validate(const Element& e) const override;
  Element constant(const Unit& symbol) const override;
  Element apply(OpSym op, const Element& a, const Element& b) const override;
  bool leq(const Element& a, const Element& b) const override;
  Unit dist_up(const Element& x, const Element& y) const override;
  Unit essinf(const Element& x) const override;
  Unit esssup(const Element& x) const override;
  Element delta_eventually_constant(std::span<const Element> prefix,
                                    const Element& tail) const override;
  bool enumerable() const override { return true; }
  std::vector<Element> enumerate(const DyadicGrid& grid, std::size_t budget) const override;
  Element sample(Rng& rng) const override;
};

/// C(X) for a finite X: all exact-valued monotone maps, pointwise
/// operations, sup metric.
class FunctionAlgebra : public Algebra {
public:
  explicit FunctionAlgebra(PreorderPtr domain) : domain_(std::move(domain)) {}

  const PreorderPtr& domain() const { return domain_; }

  std::string describe() const override;
  void validate(const Element& e) const override;
  Element constant(const Unit& symbol) const override;
  Element apply(OpSym op, const Element& a, const Element& b) const override;
  bool leq(const Element& a, const Element& b) const override;
  Unit dist_up(const Element& x, const Element& y) const override;
  Unit essinf(const Element& x) const override;
  Unit esssup(const Element& x) const override;
  Element delta_eventually_constant(std::span<const Element> prefix,
                                    const Element& tail) const override;
  bool enumerable() const override { return true; }
  std::vector<Element> enumerate(const DyadicGrid& grid, std::size_t budget) const override;
  Element sample(Rng& rng) const override;

protected:
  std::optional<std::string> witness_point(const Element& x,
                                           const Element& y) const override;

private:
  PreorderPtr domain_;
};

/// The subalgebra of C(X) generated by a finite family of maps. Elements
/// carry the describing term alongside the induced map; equality is map
/// equality.
class GeneratedAlgebra : public Algebra {
public:
  GeneratedAlgebra(PosetPtr domain, std::vector<MonotoneMap> generators);

  const PosetPtr& domain() const { return domain_; }
  std::span<const MonotoneMap> generators() const { return generators_; }

  /// The element denoted by a term over generator indices.
  Element from_term(const Term& term) const;
  Element generator(std::size_t index) const;

  std::string describe() const override;
  void validate(const Element& e) const override;
  Element constant(const Unit& symbol) const override;
  Element apply(OpSym op, const Element& a, const Element& b) const override;
  bool leq(const Element& a, const Element& b) const override;
  Unit dist_up(const Element& x, const Element& y) const override;
  bool enumerable() const override { return false; }
  Element sample(Rng& rng) const override;

protected:
  std::optional<std::string> witness_point(const Element& x,
                                           const Element& y) const override;

private:
  PosetPtr domain_;
  std::vector<MonotoneMap> generators_;
};

AlgebraPtr scalar_algebra();
AlgebraPtr function_algebra(PreorderPtr domain);
AlgebraPtr product_algebra(std::vector<AlgebraPtr> components);
AlgebraPtr generated_algebra(PosetPtr domain, std::vector<MonotoneMap> generators);
/// Same carrier with oplus/odot and join/meet swapped and constants
/// complemented.
AlgebraPtr dual_algebra(AlgebraPtr inner);

/// Structural evaluation of a delta-free term in an arbitrary carrier
/// (delta over constant/explicit specs is computed by its exact closed
/// form). `vars[i]` interprets var(i).
Element eval_term_in(const Algebra& algebra, const Term& term,
                     std::span<const Element> vars);

/// Pointwise exact delta on C(X): point p takes eval_delta_exact of
/// per_point[p]. The result is checked monotone (MonotonicityError).
MonotoneMap delta_on_function_algebra(const PreorderPtr& domain,
                                      const std::vector<SequenceSpec>& per_point,
                                      const Environment& env = {});

}  // namespace mcalg
