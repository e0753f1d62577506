// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
// needed so that identical seeds give byte-identical runs on any platform.

#pragma once

#include <cstdint>

#include "ddlab/rational.hpp"

namespace ddlab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), rejection-sampled so the distribution is exact.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n == 0 ? 0 : UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  bool coin() { return (next() & 1) != 0; }

  // num and den uniform in [1, 2^31), random sign.
  Rational rational31() {
    long long num = static_cast<long long>(below((1ULL << 31) - 1) + 1);
    long long den = static_cast<long long>(below((1ULL << 31) - 1) + 1);
    if (coin()) num = -num;
    return Rational(num, den);
  }

  // Small rational, handy for property tests where values should stay tame.
  Rational small_rational(std::uint64_t max_abs_num, std::uint64_t max_den) {
    long long num = static_cast<long long>(below(2 * max_abs_num + 1)) -
                    static_cast<long long>(max_abs_num);
    long long den = static_cast<long long>(below(max_den) + 1);
    return Rational(num, den);
  }

 private:
  std::uint64_t state_;
};

// Exact point on the unit circle from the tangent half-angle map:
// (sin, cos) = (2u/(1+u^2), (1-u^2)/(1+u^2)).
struct UnitCirclePoint {
  Rational sin_v, cos_v;
};

inline UnitCirclePoint half_angle_point(const Rational& u) {
  Rational u2 = u * u;
  Rational denom = Rational(1) + u2;
  return {Rational(2) * u / denom, (Rational(1) - u2) / denom};
}

}  // namespace ddlab
