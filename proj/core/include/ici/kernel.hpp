#pragma once

// Pure step formulas over pairs of samples (x, f(x), f'(x)).
//
// Nothing here loops or evaluates f; the driver in solve.hpp owns the
// iteration. Every formula is written once and instantiated for MPReal,
// MPComplex, double and std::complex<double>.

#include "ici/errors.hpp"
#include "ici/scalar.hpp"

namespace ici {

template <StepScalar T>
struct PointSample {
  T x;   // abscissa
  T y;   // residual f(x)
  T yp;  // derivative f'(x)
};

template <StepScalar T>
PointSample(T, T, T) -> PointSample<T>;

template <StepScalar T>
struct IciWeights {
  T prev;    // on the Newton step from x_{n-1}: y_n^2 / (y_{n-1} - y_n)^2
  T cur;     // on the Newton step from x_n: y_{n-1}^2 / (y_{n-1} - y_n)^2
  T secant;  // on the secant step: -2 y_{n-1} y_n / (y_{n-1} - y_n)^2
};

namespace detail {

template <StepScalar T>
void require_distinct_residuals(const PointSample<T>& a, const PointSample<T>& b) {
  if (a.y == b.y) {
    throw DegenerateStepError(DegenerateStepError::Kind::equal_residuals,
                              "equal residuals f(a) = f(b): inverse interpolant undefined");
  }
}

/// 2x, exact in binary arithmetic for every supported scalar.
template <StepScalar T>
T twice(const T& x) {
  return x + x;
}

template <StepScalar T>
void require_derivative(const PointSample<T>& p) {
  if (is_zero(p.yp)) {
    throw DegenerateStepError(DegenerateStepError::Kind::zero_derivative, "zero derivative f'(x) = 0");
  }
}

}  // namespace detail

/// Cubic Hermite interpolant of (x, y) data through both samples, evaluated at
/// theta = (x - a) / (b - a).
template <StepScalar T>
T hermite_forward_eval(const PointSample<T>& pa, const PointSample<T>& pb, const T& theta) {
  if (pa.x == pb.x) {
    throw DegenerateStepError(DegenerateStepError::Kind::degenerate_interval,
                              "degenerate interval: a = b in cubic Hermite blend");
  }
  const T h = pb.x - pa.x;
  const T tm1 = theta - constant_like(theta, 1);
  const T tm1_sq = tm1 * tm1;
  const T theta_sq = theta * theta;
  const T one_plus = constant_like(theta, 1) + detail::twice(theta);
  const T three_minus = constant_like(theta, 3) - detail::twice(theta);
  return one_plus * tm1_sq * pa.y + theta * tm1_sq * h * pa.yp + theta_sq * three_minus * pb.y +
         theta_sq * tm1 * h * pb.yp;
}

/// Cubic Hermite interpolant of the inverse function x(y), evaluated at
/// s = (y - f(a)) / (f(b) - f(a)).
template <StepScalar T>
T hermite_inverse_eval(const PointSample<T>& pa, const PointSample<T>& pb, const T& s) {
  detail::require_distinct_residuals(pa, pb);
  detail::require_derivative(pa);
  detail::require_derivative(pb);
  const T delta = pb.y - pa.y;
  const T one = constant_like(s, 1);
  const T one_minus = one - s;
  const T left = (one + detail::twice(s)) * pa.x + s * delta / pa.yp;
  const T right = (constant_like(s, 3) - detail::twice(s)) * pb.x - one_minus * delta / pb.yp;
  return left * one_minus * one_minus + right * s * s;
}

template <StepScalar T>
T newton_step(const PointSample<T>& p) {
  detail::require_derivative(p);
  return p.x - p.y / p.yp;
}

template <StepScalar T>
T secant_step(const PointSample<T>& prev, const PointSample<T>& cur) {
  detail::require_distinct_residuals(prev, cur);
  return cur.x - cur.y * (cur.x - prev.x) / (cur.y - prev.y);
}

/// Residual weights of the ICI average; they sum to one.
template <StepScalar T>
IciWeights<T> ici_weights(const T& y_prev, const T& y_cur) {
  if (y_prev == y_cur) {
    throw DegenerateStepError(DegenerateStepError::Kind::equal_residuals,
                              "equal residuals: ICI weights undefined");
  }
  const T diff = y_prev - y_cur;
  const T denom = diff * diff;
  return {y_cur * y_cur / denom, y_prev * y_prev / denom, -detail::twice(y_prev * y_cur) / denom};
}

/// One Inverse Cubic Iteration step: the residual-weighted average of the
/// Newton steps from both samples and the secant step through them.
template <StepScalar T>
T ici_step(const PointSample<T>& prev, const PointSample<T>& cur) {
  detail::require_distinct_residuals(prev, cur);
  detail::require_derivative(prev);
  detail::require_derivative(cur);
  const IciWeights<T> w = ici_weights(prev.y, cur.y);
  return w.prev * newton_step(prev) + w.cur * newton_step(cur) + w.secant * secant_step(prev, cur);
}

/// The inverse interpolant evaluated at y = 0 by direct substitution, with
/// a = x_{n-1} and b = x_n. Algebraically identical to ici_step.
template <StepScalar T>
T ici_step_blind(const PointSample<T>& prev, const PointSample<T>& cur) {
  detail::require_distinct_residuals(prev, cur);
  detail::require_derivative(prev);
  detail::require_derivative(cur);
  const T& a = prev.x;
  const T& b = cur.x;
  const T& fa = prev.y;
  const T delta = cur.y - prev.y;
  const T one = constant_like(a, 1);
  const T q = fa / delta;
  const T one_plus_q = one + q;
  const T first = ((one - detail::twice(q)) * a - fa / prev.yp) * one_plus_q * one_plus_q;
  const T second = (fa * fa) / (delta * delta) *
                   ((constant_like(a, 3) + detail::twice(q)) * b - delta / cur.yp * one_plus_q);
  return first + second;
}

/// ICI with the base points and the small updates averaged separately, then
/// added. Algebraically identical to ici_step.
template <StepScalar T>
T ici_step_averaged(const PointSample<T>& prev, const PointSample<T>& cur) {
  detail::require_distinct_residuals(prev, cur);
  detail::require_derivative(prev);
  detail::require_derivative(cur);
  const IciWeights<T> w = ici_weights(prev.y, cur.y);
  const T dx = cur.x - prev.x;
  const T dy = cur.y - prev.y;
  const T base = w.prev * prev.x + (w.cur + w.secant) * cur.x;
  const T update = -(w.prev * (prev.y / prev.yp) + w.cur * (cur.y / cur.yp) + w.secant * (cur.y * dx / dy));
  return base + update;
}

}  // namespace ici
