#pragma once

// Shared helpers for the unit and acceptance suites: a small deterministic
// generator and independent reference computations.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "ici/mpreal.hpp"

namespace ici::testing {

/// SplitMix64. Deterministic across platforms, unlike std::uniform_*_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (next() & 1U) != 0; }

  /// Uniform in [lo, hi) with every bit of the mantissa random at precision p.
  MPReal uniform(double lo, double hi, Precision p) {
    MPReal u(p);
    const int words = static_cast<int>(p.bits() / 53) + 1;
    MPReal scale(1L, p);
    for (int i = 0; i < words; ++i) {
      scale = scale / (1L << 26) / (1L << 27);
      u += MPReal(static_cast<long>(next() >> 11), p) * scale;
    }
    return MPReal(lo, p) + MPReal(hi - lo, p) * u;
  }

 private:
  std::uint64_t state_;
};

/// Bisection on a sign change of f over [lo, hi], run until the bracket is
/// narrower than 2^-bits(p). Independent of every solver under test.
inline MPReal bisect(const std::function<MPReal(const MPReal&)>& f, MPReal lo, MPReal hi) {
  const int sign_lo = f(lo).sign();
  const long steps = static_cast<long>(lo.bits()) + 8;
  for (long i = 0; i < steps; ++i) {
    MPReal mid = (lo + hi) / 2L;
    const int s = f(mid).sign();
    if (s == 0) return mid;
    if (s == sign_lo) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return (lo + hi) / 2L;
}

/// -log10 |a - b|, capped at `cap` when they agree to working precision.
inline double agreement_digits(const MPReal& a, const MPReal& b, double cap = 1e9) {
  const MPReal d = abs(a - b);
  if (d.is_zero()) return cap;
  return -log10(d).to_double();
}

/// |a - b| <= ulps * 2^(exponent(scale) - bits).
inline bool within_ulps(const MPReal& a, const MPReal& b, const MPReal& scale, long ulps) {
  const MPReal d = abs(a - b);
  if (d.is_zero()) return true;
  if (scale.is_zero()) return false;
  const MPReal ulp = pow(constant_like(a, 2), scale.exponent2() - static_cast<long>(a.bits()));
  return d <= ulp * ulps;
}

}  // namespace ici::testing
