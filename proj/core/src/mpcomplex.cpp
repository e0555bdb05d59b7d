#include "ici/mpcomplex.hpp"

#include <algorithm>
#include <string>

#include "ici/errors.hpp"

namespace ici {

namespace {

MPReal zero_like(const MPReal& x) { return constant_like(x, 0); }

std::string strip_spaces(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (c != ' ' && c != '\t' && c != '\r' && c != '\n') s.push_back(c);
  }
  return s;
}

}  // namespace

MPComplex::MPComplex(MPReal re) : re_(std::move(re)), im_(zero_like(re_)) {}

std::string MPComplex::to_string(int digits) const {
  std::string out = re_.to_string(digits);
  std::string im = im_.to_string(digits);
  if (im.front() != '-') out.push_back('+');
  out += im;
  out.push_back('i');
  return out;
}

MPComplex operator*(const MPComplex& a, const MPComplex& b) {
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

MPComplex operator/(const MPComplex& a, const MPComplex& b) {
  const MPReal denom = b.re_ * b.re_ + b.im_ * b.im_;
  return {(a.re_ * b.re_ + a.im_ * b.im_) / denom, (a.im_ * b.re_ - a.re_ * b.im_) / denom};
}

MPReal abs(const MPComplex& z) { return hypot(z.re(), z.im()); }

MPReal phase(const MPComplex& z) {
  if (z.is_nan()) return MPReal::nan(Precision(Precision::kMinDigits)).with_bits(z.bits());
  if (z.is_zero()) throw UndefinedPhaseError();
  // atan2 returns (-pi, pi] except for a negative zero imaginary part on the
  // negative real axis; map that case to +pi to keep the half-open range.
  MPReal a = atan2(z.im(), z.re());
  if (z.im().is_zero() && z.re().sign() < 0) a = abs(a);
  return a;
}

MPComplex exp(const MPComplex& z) {
  const MPReal m = exp(z.re());
  return {m * cos(z.im()), m * sin(z.im())};
}

MPComplex log(const MPComplex& z) {
  if (z.is_zero()) {
    MPReal ninf = z.re().with_bits(z.bits());
    mpfr_set_inf(ninf.get_mutable(), -1);
    return {ninf, zero_like(z.im())};
  }
  return {log(abs(z)), phase(z)};
}

MPComplex sqrt(const MPComplex& z) {
  if (z.is_zero()) return z;
  const MPReal r = abs(z);
  MPReal re = sqrt((r + z.re()) / 2);
  MPReal im = sqrt((r - z.re()) / 2);
  if (mpfr_signbit(z.im().get())) im = -im;
  return {re, im};
}

MPComplex sin(const MPComplex& z) {
  return {sin(z.re()) * cosh(z.im()), cos(z.re()) * sinh(z.im())};
}

MPComplex cos(const MPComplex& z) {
  return {cos(z.re()) * cosh(z.im()), -(sin(z.re()) * sinh(z.im()))};
}

MPComplex pow(const MPComplex& base, long exponent) {
  const bool invert = exponent < 0;
  unsigned long n = invert ? 0UL - static_cast<unsigned long>(exponent) : static_cast<unsigned long>(exponent);
  MPComplex result = constant_like(base, 1);
  MPComplex square = base;
  while (n != 0) {
    if (n & 1UL) result = result * square;
    n >>= 1;
    if (n != 0) square = square * square;
  }
  if (invert) return constant_like(base, 1) / result;
  return result;
}

MPComplex pow(const MPComplex& base, const MPComplex& exponent) {
  if (base.is_zero() && exponent.re().sign() > 0) return constant_like(base, 0);
  return exp(exponent * log(base));
}

MPReal log10_abs(const MPComplex& z) { return log10_abs(abs(z)); }

bool has_imaginary_part(std::string_view text) {
  const std::string s = strip_spaces(text);
  return !s.empty() && (s.back() == 'i' || s.back() == 'I') && s != "inf" && s != "-inf" && s != "+inf";
}

MPComplex parse_complex(std::string_view text, Precision p) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty complex literal", 0);
  if (!has_imaginary_part(s)) return MPComplex(MPReal(s, p));

  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_value = [&](const std::string& t, std::size_t offset) {
    if (t.empty() || t == "+") return MPReal(1L, p);
    if (t == "-") return MPReal(-1L, p);
    try {
      return MPReal(t, p);
    } catch (const ParseError& e) {
      throw ParseError("invalid imaginary part in '" + s + "'", offset + e.offset());
    }
  };
  if (split == std::string::npos) return {MPReal(p), imag_value(body, 0)};
  return {MPReal(body.substr(0, split), p), imag_value(body.substr(split), split)};
}

}  // namespace ici
