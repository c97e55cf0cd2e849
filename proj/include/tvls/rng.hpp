// Counter-based pseudorandom generator with splittable streams.
//
// SplitMix64: the state advances by a fixed odd constant (a counter in
// disguise) and each output is a bijective 64-bit mix of the state, so
// distinct seeds give independent-looking streams and forking is cheap.
// Every randomized routine in this library takes either a seed or a
// generator derived from one, which makes runs reproducible bit for bit.
#pragma once

#include <cmath>
#include <cstdint>

#include "tvls/common.hpp"

namespace tvls {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return detail::mix64(state_);
  }

  // Independent stream keyed by (current seed, label).
  SplitMix64 fork(std::uint64_t label) const {
    return SplitMix64(detail::mix64(state_ ^ detail::mix64(label + 0x6a09e667f3bcc909ULL)));
  }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double next_double_pos() { return double((next_u64() >> 11) + 1) * 0x1.0p-53; }

  // Unbiased uniform integer in {0..bound-1}; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % bound);
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return r % bound;
  }

  // Standard normal via Box-Muller.
  double next_gaussian() {
    const double u = next_double_pos();
    const double v = next_double();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
  }

  cplx next_complex_gaussian() {
    const double u = next_double_pos();
    const double v = next_double();
    const double r = std::sqrt(-std::log(u));
    return {r * std::cos(2.0 * kPi * v), r * std::sin(2.0 * kPi * v)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace tvls
