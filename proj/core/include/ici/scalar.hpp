#pragma once

// Overloads that let the generic step formulas run on hardware scalars as
// well as on MPReal / MPComplex.

#include <cmath>
#include <complex>

#include "ici/mpcomplex.hpp"
#include "ici/mpreal.hpp"

namespace ici {

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_nan(double x) { return std::isnan(x); }
inline double magnitude(double x) { return std::abs(x); }
inline double constant_like(double, long v) { return static_cast<double>(v); }

inline bool is_zero(const std::complex<double>& z) { return z == std::complex<double>(0.0, 0.0); }
inline bool is_nan(const std::complex<double>& z) { return std::isnan(z.real()) || std::isnan(z.imag()); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }
inline std::complex<double> constant_like(const std::complex<double>&, long v) {
  return {static_cast<double>(v), 0.0};
}

/// Field-like scalar accepted by the step formulas.
template <class T>
concept StepScalar = requires(const T& a, const T& b, long n) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { a == b } -> std::convertible_to<bool>;
  { is_zero(a) } -> std::convertible_to<bool>;
  { constant_like(a, n) } -> std::convertible_to<T>;
};

}  // namespace ici
