#include "ici/mpreal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ici/errors.hpp"

namespace ici {

namespace {

constexpr mpfr_rnd_t kRound = MPFR_RNDN;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Precision::Precision(int digits) : digits_(digits) {
  if (digits < kMinDigits) {
    throw std::invalid_argument("precision must be at least " + std::to_string(kMinDigits) +
                                " decimal digits, got " + std::to_string(digits));
  }
}

mpfr_prec_t Precision::bits() const noexcept {
  // log2(10) = 3.3219280948873623...
  const double b = std::ceil(static_cast<double>(digits_) * 3.3219280948873623);
  return static_cast<mpfr_prec_t>(b) + kGuardBits;
}

int Precision::round_trip_digits() const noexcept {
  return 1 + static_cast<int>(std::ceil(static_cast<double>(bits()) * 0.30102999566398120));
}

MPReal::MPReal(Uninit, mpfr_prec_t bits) { mpfr_init2(v_, bits); }

MPReal::MPReal(Precision p) : MPReal(Uninit{}, p.bits()) { mpfr_set_zero(v_, 1); }

MPReal::MPReal(double v, Precision p) : MPReal(Uninit{}, p.bits()) { mpfr_set_d(v_, v, kRound); }

MPReal::MPReal(long v, Precision p) : MPReal(Uninit{}, p.bits()) { mpfr_set_si(v_, v, kRound); }

MPReal::MPReal(std::string_view text, Precision p) : MPReal(Uninit{}, p.bits()) {
  const std::string s(trim(text));
  if (s.empty()) {
    throw ParseError("empty numeric literal", 0);
  }
  char* end = nullptr;
  mpfr_strtofr(v_, s.c_str(), &end, 10, kRound);
  if (end != s.c_str() + s.size()) {
    const auto offset = static_cast<std::size_t>(end - s.c_str());
    throw ParseError("invalid numeric literal '" + s + "'", offset);
  }
}

MPReal::MPReal(const MPReal& other) : MPReal(Uninit{}, other.bits()) {
  mpfr_set(v_, other.v_, kRound);
}

MPReal::MPReal(MPReal&& other) noexcept : MPReal(Uninit{}, other.bits()) { mpfr_swap(v_, other.v_); }

MPReal& MPReal::operator=(const MPReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.bits());
    mpfr_set(v_, other.v_, kRound);
  }
  return *this;
}

MPReal& MPReal::operator=(MPReal&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

MPReal::~MPReal() { mpfr_clear(v_); }

MPReal MPReal::nan(Precision p) {
  MPReal r(Uninit{}, p.bits());
  mpfr_set_nan(r.v_);
  return r;
}

MPReal MPReal::infinity(Precision p, int sign) {
  MPReal r(Uninit{}, p.bits());
  mpfr_set_inf(r.v_, sign < 0 ? -1 : 1);
  return r;
}

MPReal MPReal::pi(Precision p) {
  MPReal r(Uninit{}, p.bits());
  mpfr_const_pi(r.v_, kRound);
  return r;
}

MPReal MPReal::with_bits(mpfr_prec_t bits) const {
  MPReal r(Uninit{}, bits);
  mpfr_set(r.v_, v_, kRound);
  return r;
}

int MPReal::sign() const noexcept {
  if (is_nan()) return 0;
  return mpfr_sgn(v_);
}

std::string MPReal::to_string(int digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return mpfr_sgn(v_) < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";

  mpfr_exp_t exp10 = 0;
  const std::size_t n = digits > 0 ? static_cast<std::size_t>(digits) : 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, n, v_, kRound);
  std::string mant(raw);
  mpfr_free_str(raw);

  std::string out;
  if (mant.front() == '-') {
    out.push_back('-');
    mant.erase(0, 1);
  }
  // value = 0.mant * 10^exp10, leading digit weight 10^(exp10-1)
  const long lead = static_cast<long>(exp10) - 1;
  if (lead >= -6 && lead < 6) {
    if (lead >= 0) {
      const auto int_len = static_cast<std::size_t>(lead + 1);
      if (mant.size() <= int_len) {
        out += mant;
        out.append(int_len - mant.size(), '0');
      } else {
        out += mant.substr(0, int_len);
        out.push_back('.');
        out += mant.substr(int_len);
      }
    } else {
      out += "0.";
      out.append(static_cast<std::size_t>(-lead - 1), '0');
      out += mant;
    }
    return out;
  }
  out.push_back(mant[0]);
  if (mant.size() > 1) {
    out.push_back('.');
    out += mant.substr(1);
  }
  out.push_back('e');
  out.push_back(lead < 0 ? '-' : '+');
  out += std::to_string(lead < 0 ? -lead : lead);
  return out;
}

MPReal MPReal::wider(const MPReal& a, const MPReal& b) {
  return MPReal(Uninit{}, std::max(a.bits(), b.bits()));
}

MPReal& MPReal::operator+=(const MPReal& rhs) { return *this = *this + rhs; }
MPReal& MPReal::operator-=(const MPReal& rhs) { return *this = *this - rhs; }
MPReal& MPReal::operator*=(const MPReal& rhs) { return *this = *this * rhs; }
MPReal& MPReal::operator/=(const MPReal& rhs) { return *this = *this / rhs; }

MPReal operator+(const MPReal& a, const MPReal& b) {
  MPReal r = MPReal::wider(a, b);
  mpfr_add(r.v_, a.v_, b.v_, kRound);
  return r;
}

MPReal operator-(const MPReal& a, const MPReal& b) {
  MPReal r = MPReal::wider(a, b);
  mpfr_sub(r.v_, a.v_, b.v_, kRound);
  return r;
}

MPReal operator*(const MPReal& a, const MPReal& b) {
  MPReal r = MPReal::wider(a, b);
  mpfr_mul(r.v_, a.v_, b.v_, kRound);
  return r;
}

MPReal operator/(const MPReal& a, const MPReal& b) {
  MPReal r = MPReal::wider(a, b);
  mpfr_div(r.v_, a.v_, b.v_, kRound);
  return r;
}

MPReal operator*(const MPReal& a, long b) {
  MPReal r(MPReal::Uninit{}, a.bits());
  mpfr_mul_si(r.v_, a.v_, b, kRound);
  return r;
}

MPReal operator+(const MPReal& a, long b) {
  MPReal r(MPReal::Uninit{}, a.bits());
  mpfr_add_si(r.v_, a.v_, b, kRound);
  return r;
}

MPReal operator-(const MPReal& a, long b) {
  MPReal r(MPReal::Uninit{}, a.bits());
  mpfr_sub_si(r.v_, a.v_, b, kRound);
  return r;
}

MPReal operator/(const MPReal& a, long b) {
  MPReal r(MPReal::Uninit{}, a.bits());
  mpfr_div_si(r.v_, a.v_, b, kRound);
  return r;
}

MPReal MPReal::operator-() const {
  MPReal r(Uninit{}, bits());
  mpfr_neg(r.v_, v_, kRound);
  return r;
}

std::partial_ordering operator<=>(const MPReal& a, const MPReal& b) noexcept {
  if (a.is_nan() || b.is_nan()) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

template <class F>
MPReal apply_unary(const MPReal& x, F fn) {
  MPReal r(MPReal::Uninit{}, x.bits());
  fn(r.v_, x.v_, kRound);
  return r;
}

MPReal abs(const MPReal& x) {
  return apply_unary(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { return mpfr_abs(r, a, rnd); });
}
MPReal sqrt(const MPReal& x) { return apply_unary(x, mpfr_sqrt); }
MPReal exp(const MPReal& x) { return apply_unary(x, mpfr_exp); }
MPReal log(const MPReal& x) { return apply_unary(x, mpfr_log); }
MPReal log10(const MPReal& x) { return apply_unary(x, mpfr_log10); }
MPReal sin(const MPReal& x) { return apply_unary(x, mpfr_sin); }
MPReal cos(const MPReal& x) { return apply_unary(x, mpfr_cos); }
MPReal sinh(const MPReal& x) { return apply_unary(x, mpfr_sinh); }
MPReal cosh(const MPReal& x) { return apply_unary(x, mpfr_cosh); }

MPReal atan2(const MPReal& y, const MPReal& x) {
  MPReal r = y.with_bits(std::max(y.bits(), x.bits()));
  mpfr_atan2(r.get_mutable(), y.get(), x.get(), kRound);
  return r;
}

MPReal pow(const MPReal& base, const MPReal& exponent) {
  MPReal r = base.with_bits(std::max(base.bits(), exponent.bits()));
  mpfr_pow(r.get_mutable(), base.get(), exponent.get(), kRound);
  return r;
}

MPReal pow(const MPReal& base, long exponent) {
  MPReal r = base.with_bits(base.bits());
  mpfr_pow_si(r.get_mutable(), base.get(), exponent, kRound);
  return r;
}

MPReal hypot(const MPReal& a, const MPReal& b) {
  MPReal r = a.with_bits(std::max(a.bits(), b.bits()));
  mpfr_hypot(r.get_mutable(), a.get(), b.get(), kRound);
  return r;
}

MPReal max(const MPReal& a, const MPReal& b) {
  MPReal r = a.with_bits(std::max(a.bits(), b.bits()));
  mpfr_max(r.get_mutable(), a.get(), b.get(), kRound);
  return r;
}

MPReal log10_abs(const MPReal& x) {
  if (x.is_zero()) {
    MPReal r = x.with_bits(x.bits());
    mpfr_set_inf(r.get_mutable(), -1);
    return r;
  }
  return log10(abs(x));
}

}  // namespace ici
