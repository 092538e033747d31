#include "mcalg/rational.hpp"

#include <cctype>

namespace mcalg {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Unit Unit::parse(std::string_view text) {
  auto parsed = try_parse(text);
  if (!parsed) {
    throw RangeError("malformed rational '" + std::string(text) + "'");
  }
  return *parsed;
}

std::optional<Unit> Unit::try_parse(std::string_view text) {
  std::string_view num = text;
  std::string_view den;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!all_digits(den)) return std::nullopt;
  }
  if (!all_digits(num)) return std::nullopt;
  BigInt p{std::string(num)};
  BigInt q = den.empty() ? BigInt{1} : BigInt{std::string(den)};
  if (q == 0) return std::nullopt;
  Rational r{p, q};
  if (r < 0 || r > 1) {
    throw RangeError("constant " + r.str() + " out of range [0,1]");
  }
  return Unit{std::move(r)};
}

std::string Unit::str() const {
  if (denominator(v_) == 1) return numerator(v_).str();
  return v_.str();
}

Unit oplus(const Unit& a, const Unit& b) {
  Rational s = a.value() + b.value();
  return s >= 1 ? Unit::one() : Unit{std::move(s)};
}

Unit odot(const Unit& a, const Unit& b) {
  Rational s = a.value() + b.value() - 1;
  return s <= 0 ? Unit::zero() : Unit{std::move(s)};
}

Unit join(const Unit& a, const Unit& b) { return a < b ? b : a; }

Unit meet(const Unit& a, const Unit& b) { return a < b ? a : b; }

Unit ominus(const Unit& a, const Unit& lambda) {
  Rational s = a.value() - lambda.value();
  return s <= 0 ? Unit::zero() : Unit{std::move(s)};
}

Unit complement(const Unit& a) { return Unit{1 - a.value()}; }

Unit dist_up(const Unit& a, const Unit& b) { return ominus(b, a); }

Unit dist(const Unit& a, const Unit& b) {
  return join(dist_up(a, b), dist_up(b, a));
}

Unit dyadic(unsigned k) {
  return Unit{Rational{BigInt{1}, BigInt{1} << k}};
}

Unit hnn_gap(std::size_t n) {
  if (n == 0) return Unit::one();
  return dyadic(static_cast<unsigned>(n - 1));
}

Unit DyadicGrid::at(std::size_t i) const {
  return Unit{Rational{BigInt(i), BigInt{1} << k_}};
}

bool DyadicGrid::contains(const Unit& v) const {
  Rational scaled = v.value() * Rational{BigInt{1} << k_};
  return denominator(scaled) == 1;
}

std::vector<Unit> DyadicGrid::values() const {
  std::vector<Unit> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
  return out;
}

}  // namespace mcalg
