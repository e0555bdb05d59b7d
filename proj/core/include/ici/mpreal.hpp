#pragma once

// Arbitrary-precision real scalar.
//
// Every value carries its own binary precision, derived from a decimal
// digit count through `Precision`. There is no global default precision:
// callers pass a Precision wherever a value is created from scratch, and
// binary operations produce a result at the wider of the two operands.

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace ici {

/// Decimal working precision ("Digits").
class Precision {
 public:
  static constexpr int kMinDigits = 10;
  static constexpr int kGuardBits = 32;

  /// Throws std::invalid_argument when digits < kMinDigits.
  explicit Precision(int digits);

  int digits() const noexcept { return digits_; }

  /// ceil(digits * log2(10)) + kGuardBits.
  mpfr_prec_t bits() const noexcept;

  /// Decimal digits needed to re-read a value at bits() exactly.
  int round_trip_digits() const noexcept;

  friend bool operator==(Precision, Precision) = default;

 private:
  int digits_;
};

class MPReal {
 public:
  /// Zero at precision p.
  explicit MPReal(Precision p);
  MPReal(double v, Precision p);
  MPReal(long v, Precision p);
  MPReal(int v, Precision p) : MPReal(static_cast<long>(v), p) {}
  /// Parses a decimal (or "nan", "inf", "-inf") literal; throws ParseError.
  MPReal(std::string_view text, Precision p);

  MPReal(const MPReal& other);
  MPReal(MPReal&& other) noexcept;
  MPReal& operator=(const MPReal& other);
  MPReal& operator=(MPReal&& other) noexcept;
  ~MPReal();

  static MPReal nan(Precision p);
  static MPReal infinity(Precision p, int sign = 1);
  static MPReal pi(Precision p);

  mpfr_prec_t bits() const noexcept { return mpfr_get_prec(v_); }
  /// Same value rounded to another precision.
  MPReal with_bits(mpfr_prec_t bits) const;

  bool is_nan() const noexcept { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const noexcept { return mpfr_inf_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  /// -1, 0 or +1; 0 for NaN.
  int sign() const noexcept;

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  /// Binary exponent e with value = m * 2^e, 0.5 <= |m| < 1 (finite, nonzero only).
  long exponent2() const noexcept { return mpfr_get_exp(v_); }

  /// Renders `digits` significant digits. Magnitudes in [1e-6, 1e6) use plain
  /// positional notation; everything else uses d.ddd…e±E. digits <= 0 means
  /// enough digits to round-trip at this value's binary precision.
  std::string to_string(int digits = 0) const;

  MPReal& operator+=(const MPReal& rhs);
  MPReal& operator-=(const MPReal& rhs);
  MPReal& operator*=(const MPReal& rhs);
  MPReal& operator/=(const MPReal& rhs);

  friend MPReal operator+(const MPReal& a, const MPReal& b);
  friend MPReal operator-(const MPReal& a, const MPReal& b);
  friend MPReal operator*(const MPReal& a, const MPReal& b);
  friend MPReal operator/(const MPReal& a, const MPReal& b);
  friend MPReal operator*(const MPReal& a, long b);
  friend MPReal operator*(long a, const MPReal& b) { return b * a; }
  friend MPReal operator+(const MPReal& a, long b);
  friend MPReal operator-(const MPReal& a, long b);
  friend MPReal operator/(const MPReal& a, long b);
  MPReal operator-() const;

  friend bool operator==(const MPReal& a, const MPReal& b) noexcept {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend std::partial_ordering operator<=>(const MPReal& a, const MPReal& b) noexcept;

  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get_mutable() noexcept { return v_; }

 private:
  struct Uninit {};
  MPReal(Uninit, mpfr_prec_t bits);
  static MPReal wider(const MPReal& a, const MPReal& b);
  template <class F>
  friend MPReal apply_unary(const MPReal& x, F fn);

  mpfr_t v_;
};

MPReal abs(const MPReal& x);
MPReal sqrt(const MPReal& x);
MPReal exp(const MPReal& x);
MPReal log(const MPReal& x);
MPReal log10(const MPReal& x);
MPReal sin(const MPReal& x);
MPReal cos(const MPReal& x);
MPReal sinh(const MPReal& x);
MPReal cosh(const MPReal& x);
MPReal atan2(const MPReal& y, const MPReal& x);
MPReal pow(const MPReal& base, const MPReal& exponent);
MPReal pow(const MPReal& base, long exponent);
MPReal hypot(const MPReal& a, const MPReal& b);
MPReal max(const MPReal& a, const MPReal& b);

/// log10|x|; the -infinity sentinel for x == 0.
MPReal log10_abs(const MPReal& x);

inline bool is_zero(const MPReal& x) { return x.is_zero(); }
inline bool is_nan(const MPReal& x) { return x.is_nan(); }

/// A value equal to v carrying the precision of `like`.
inline MPReal constant_like(const MPReal& like, long v) {
  MPReal r = like.with_bits(like.bits());
  mpfr_set_si(r.get_mutable(), v, MPFR_RNDN);
  return r;
}

/// Magnitude as an MPReal; lets generic code compare residuals.
inline MPReal magnitude(const MPReal& x) { return abs(x); }

}  // namespace ici
