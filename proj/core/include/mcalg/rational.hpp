#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcalg/errors.hpp"

namespace mcalg {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// An exact rational in [0,1], kept in canonical reduced form.
///
/// This is the carrier element of every computation in the library: the
/// truncated operations below make [0,1] into the scalar model against
/// which everything else is checked.
class Unit {
public:
  Unit() = default;  // zero

  explicit Unit(Rational value) : v_(std::move(value)) {
    if (v_ < 0 || v_ > 1) {
      throw RangeError("value " + v_.str() + " outside [0,1]");
    }
  }

  static Unit zero() { return Unit{}; }
  static Unit one() { return Unit{Rational{1}}; }

  static Unit of(std::int64_t num, std::int64_t den) {
    return Unit{Rational{num, den}};
  }

  /// Accepts "p/q" (q > 0) or a bare integer; canonicalizes on input.
  static Unit parse(std::string_view text);
  static std::optional<Unit> try_parse(std::string_view text);

  const Rational& value() const { return v_; }

  /// Reduced "p/q", or the bare integer when the denominator is 1.
  std::string str() const;

  friend bool operator==(const Unit& a, const Unit& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Unit& a, const Unit& b) { return a.v_ != b.v_; }
  friend bool operator<(const Unit& a, const Unit& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Unit& a, const Unit& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Unit& a, const Unit& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Unit& a, const Unit& b) { return a.v_ >= b.v_; }

private:
  Rational v_{};
};

/// min(a+b, 1) -- truncated addition.
Unit oplus(const Unit& a, const Unit& b);

/// max(a+b-1, 0) -- truncated multiplication (the dual of oplus).
Unit odot(const Unit& a, const Unit& b);

/// max(a, b).
Unit join(const Unit& a, const Unit& b);

/// min(a, b).
Unit meet(const Unit& a, const Unit& b);

/// max(a - lambda, 0); equals odot(a, 1-lambda). Lambda must be a constant.
Unit ominus(const Unit& a, const Unit& lambda);

/// 1 - a. Not an algebra operation (it is not monotone); used internally
/// for order-dual constants.
Unit complement(const Unit& a);

/// (b - a)^+, the asymmetric distance on the scalar carrier.
Unit dist_up(const Unit& a, const Unit& b);

/// |b - a| = max(dist_up(a,b), dist_up(b,a)).
Unit dist(const Unit& a, const Unit& b);

/// 2^(-k).
Unit dyadic(unsigned k);

/// min(1, 2^(1-n)): the tail bound of an HNN-Cauchy sequence starting at
/// index n, saturated to fit the carrier for n = 0.
Unit hnn_gap(std::size_t n);

/// The finite chain 0, 2^(-k), 2*2^(-k), ..., 1 of size 2^k + 1; closed
/// under join and meet. Sampling domain for exhaustive conformance checks.
class DyadicGrid {
public:
  explicit DyadicGrid(unsigned exponent) : k_(exponent) {}

  unsigned exponent() const { return k_; }
  std::size_t size() const { return (std::size_t{1} << k_) + 1; }
  Unit at(std::size_t i) const;
  bool contains(const Unit& v) const;
  std::vector<Unit> values() const;

private:
  unsigned k_;
};

}  // namespace mcalg
