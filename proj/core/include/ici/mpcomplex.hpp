#pragma once

#include <string>
#include <string_view>

#include "ici/mpreal.hpp"

namespace ici {

/// Arbitrary-precision complex scalar built from two MPReal parts.
class MPComplex {
 public:
  explicit MPComplex(Precision p) : re_(p), im_(p) {}
  explicit MPComplex(MPReal re);
  MPComplex(MPReal re, MPReal im) : re_(std::move(re)), im_(std::move(im)) {}
  MPComplex(double re, double im, Precision p) : re_(re, p), im_(im, p) {}

  const MPReal& re() const noexcept { return re_; }
  const MPReal& im() const noexcept { return im_; }
  mpfr_prec_t bits() const noexcept { return std::max(re_.bits(), im_.bits()); }

  bool is_nan() const noexcept { return re_.is_nan() || im_.is_nan(); }
  bool is_finite() const noexcept { return re_.is_finite() && im_.is_finite(); }
  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }

  /// "a+bi" with each part rendered by MPReal::to_string(digits).
  std::string to_string(int digits = 0) const;

  MPComplex& operator+=(const MPComplex& rhs) { return *this = *this + rhs; }
  MPComplex& operator-=(const MPComplex& rhs) { return *this = *this - rhs; }
  MPComplex& operator*=(const MPComplex& rhs) { return *this = *this * rhs; }
  MPComplex& operator/=(const MPComplex& rhs) { return *this = *this / rhs; }

  friend MPComplex operator+(const MPComplex& a, const MPComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend MPComplex operator-(const MPComplex& a, const MPComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend MPComplex operator*(const MPComplex& a, const MPComplex& b);
  friend MPComplex operator/(const MPComplex& a, const MPComplex& b);
  friend MPComplex operator*(const MPComplex& a, long b) { return {a.re_ * b, a.im_ * b}; }
  friend MPComplex operator*(long a, const MPComplex& b) { return b * a; }
  friend MPComplex operator*(const MPComplex& a, const MPReal& b) { return {a.re_ * b, a.im_ * b}; }
  friend MPComplex operator+(const MPComplex& a, long b) { return {a.re_ + b, a.im_}; }
  friend MPComplex operator-(const MPComplex& a, long b) { return {a.re_ - b, a.im_}; }
  friend MPComplex operator/(const MPComplex& a, long b) { return {a.re_ / b, a.im_ / b}; }
  MPComplex operator-() const { return {-re_, -im_}; }

  friend bool operator==(const MPComplex& a, const MPComplex& b) noexcept {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  MPReal re_;
  MPReal im_;
};

MPReal abs(const MPComplex& z);
/// arg(z) in (-pi, pi]. Throws UndefinedPhaseError for z == 0; NaN in, NaN out.
MPReal phase(const MPComplex& z);
MPComplex exp(const MPComplex& z);
/// Principal branch.
MPComplex log(const MPComplex& z);
/// Principal branch.
MPComplex sqrt(const MPComplex& z);
MPComplex sin(const MPComplex& z);
MPComplex cos(const MPComplex& z);
MPComplex pow(const MPComplex& base, long exponent);
/// exp(exponent * log(base)), with 0^w = 0 for re(w) > 0.
MPComplex pow(const MPComplex& base, const MPComplex& exponent);

/// log10|z|; the -infinity sentinel for z == 0.
MPReal log10_abs(const MPComplex& z);

/// Parses "a", "bi", "a+bi", "a-bi", "i", "-i" (parts may use exponents).
/// Throws ParseError.
MPComplex parse_complex(std::string_view text, Precision p);

/// True when `text` names a value with an explicit imaginary part.
bool has_imaginary_part(std::string_view text);

inline bool is_zero(const MPComplex& z) { return z.is_zero(); }
inline bool is_nan(const MPComplex& z) { return z.is_nan(); }
inline MPReal magnitude(const MPComplex& z) { return abs(z); }
inline MPComplex constant_like(const MPComplex& like, long v) {
  return MPComplex(constant_like(like.re(), v), constant_like(like.im(), 0));
}

}  // namespace ici
