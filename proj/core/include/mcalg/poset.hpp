#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mcalg/rational.hpp"

namespace mcalg {

/// A finite set of named points with a reflexive-transitive relation,
/// stored as the closure of the generating pairs it was built from.
class FinPreorder {
public:
  FinPreorder(std::vector<std::string> elements,
              const std::vector<std::pair<std::string, std::string>>& pairs);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& elements() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }

  /// Throws Error for unknown names.
  std::size_t index_of(std::string_view name) const;

  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }

  std::vector<std::size_t> down_set(std::size_t x) const;
  std::vector<std::size_t> up_set(std::size_t x) const;

  /// A pair a != b with a <= b <= a, if one exists.
  std::optional<std::pair<std::size_t, std::size_t>> antisymmetry_violation() const;

  /// The generating pairs are not kept; two preorders are equal when their
  /// names and closed relations coincide.
  bool operator==(const FinPreorder& other) const;

protected:
  std::vector<std::string> names_;
  std::vector<std::vector<bool>> leq_;
};

/// A FinPreorder whose relation is antisymmetric. Finite compact ordered
/// spaces are exactly these: finite plus Hausdorff forces the discrete
/// topology, so only the order is represented.
class FinPoset : public FinPreorder {
public:
  /// Throws CycleError naming two points of a cycle when antisymmetry fails.
  FinPoset(std::vector<std::string> elements,
           const std::vector<std::pair<std::string, std::string>>& pairs);
  explicit FinPoset(FinPreorder preorder);
};

using PreorderPtr = std::shared_ptr<const FinPreorder>;
using PosetPtr = std::shared_ptr<const FinPoset>;

PosetPtr make_poset(std::vector<std::string> elements,
                    std::vector<std::pair<std::string, std::string>> pairs);
PreorderPtr make_preorder(std::vector<std::string> elements,
                          std::vector<std::pair<std::string, std::string>> pairs);

/// A total exact-valued monotone map into [0,1]; the element type of a
/// function algebra C(X).
class MonotoneMap {
public:
  /// Validates totality and monotonicity (throws MonotonicityError).
  MonotoneMap(PreorderPtr domain, std::vector<Unit> values);

  static MonotoneMap constant(PreorderPtr domain, const Unit& value);
  /// Indicator of {z : z not <= x}, the canonical Urysohn witness.
  static MonotoneMap complement_down_indicator(PreorderPtr domain, std::size_t x);

  const PreorderPtr& domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  const Unit& at(std::size_t i) const { return values_[i]; }
  const std::vector<Unit>& values() const { return values_; }

  bool operator==(const MonotoneMap& other) const;

private:
  PreorderPtr domain_;
  std::vector<Unit> values_;
};

// Pointwise operations; closed on C(X) because every scalar operation is
// monotone.
MonotoneMap oplus(const MonotoneMap& f, const MonotoneMap& g);
MonotoneMap odot(const MonotoneMap& f, const MonotoneMap& g);
MonotoneMap join(const MonotoneMap& f, const MonotoneMap& g);
MonotoneMap meet(const MonotoneMap& f, const MonotoneMap& g);
MonotoneMap ominus(const MonotoneMap& f, const Unit& lambda);
bool leq(const MonotoneMap& f, const MonotoneMap& g);

/// sup over points of (g - f)^+; zero on the empty poset.
Unit dist_up(const MonotoneMap& f, const MonotoneMap& g);
/// The first point (in element order) attaining sup |g - f|.
std::optional<std::size_t> dist_witness(const MonotoneMap& f, const MonotoneMap& g);

/// The up-set indicator separating x from y: value 0 on the down-set of x
/// and 1 elsewhere, so psi(x) = 0 and psi(y) = 1. Requires NOT (x >= y).
MonotoneMap urysohn_separator(const PosetPtr& poset, std::size_t x, std::size_t y);

struct QuotientResult {
  PosetPtr classes;                    // induced order; antisymmetric by construction
  std::vector<std::size_t> projection; // domain index -> class index
  std::vector<std::size_t> representative; // class index -> domain index (least name)
};

/// Collapses x ~ y whenever every map agrees on order in both directions:
/// the preorder "x below y iff f(x) <= f(y) for all f", made a poset.
/// Class names are the lexicographically least member names.
QuotientResult quotient_by_kernel(const PreorderPtr& domain,
                                  std::span<const MonotoneMap> maps);

/// Componentwise order on pairs, named "(a,b)".
PosetPtr product_poset(const PosetPtr& a, const PosetPtr& b);

/// All grid-valued monotone maps, each exactly once, in a deterministic
/// order. Throws BudgetExceededError past `budget` maps.
void for_each_monotone_map(const PreorderPtr& domain, const DyadicGrid& grid,
                           std::size_t budget,
                           const std::function<void(const MonotoneMap&)>& visit);
std::vector<MonotoneMap> enumerate_monotone_maps(const PreorderPtr& domain,
                                                 const DyadicGrid& grid,
                                                 std::size_t budget = 1u << 20);

/// A map between carriers of preorders, by image indices.
struct PosetMap {
  PreorderPtr dom;
  PreorderPtr cod;
  std::vector<std::size_t> images;

  bool is_monotone() const;
  std::size_t operator()(std::size_t i) const { return images[i]; }
};

}  // namespace mcalg
