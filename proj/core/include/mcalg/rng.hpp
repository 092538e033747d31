#pragma once

#include <cstdint>

#include "mcalg/rational.hpp"

namespace mcalg {

/// Deterministic splitmix64 generator. Used instead of <random> so that a
/// seed reproduces identical reports on every platform and stdlib.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased and reproducible.
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  bool coin() { return (next() & 1) != 0; }

  /// A random multiple of 2^(-k) in [0,1].
  Unit unit_on_grid(unsigned k) {
    return DyadicGrid(k).at(below((std::uint64_t{1} << k) + 1));
  }

  /// A random p/q with 1 <= q <= max_den.
  Unit unit_rational(std::uint64_t max_den) {
    std::uint64_t q = 1 + below(max_den);
    std::uint64_t p = below(q + 1);
    return Unit{Rational{BigInt(p), BigInt(q)}};
  }

private:
  std::uint64_t state_;
};

}  // namespace mcalg
