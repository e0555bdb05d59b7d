#pragma once

// Iteration driver. One initial guess is supplied; x1 comes from a Newton
// step and every later iterate from the configured two-point step, so each
// index n >= 1 costs exactly one f and one f' evaluation.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ici/mpcomplex.hpp"
#include "ici/mpreal.hpp"

namespace ici {

enum class Method { newton, secant, ici, ici_averaged };
enum class StepKind { seed, newton, secant, ici, ici_averaged, safeguard_newton };
enum class SolveStatus { converged, max_iter, degenerate, nan };

std::string_view to_string(Method m);
std::string_view to_string(StepKind k);
std::string_view to_string(SolveStatus s);
std::optional<Method> parse_method(std::string_view name);
std::optional<StepKind> parse_step_kind(std::string_view name);

struct SolveConfig {
  /// Defaults: tol = 10^(10-digits), dy_guard = dfmin = 10^(5-digits),
  /// max_iter = 50, method = ici.
  explicit SolveConfig(Precision p);

  Precision precision;
  MPReal tol;        // converged when |y_n| <= tol
  int max_iter;      // steps after the seed
  Method method;
  MPReal dy_guard;   // relative: |y_n - y_{n-1}| < dy_guard * max(|y_n|, |y_{n-1}|) is degenerate
  MPReal dfmin;      // absolute: |f'(x_n)| < dfmin is treated as a vanishing derivative
  /// Magnitudes above this count as overflow and end the solve with status nan.
  std::optional<MPReal> overflow_limit;
  /// When false, a stagnant residual pair or a vanishing previous derivative
  /// ends the solve as degenerate instead of taking a plain Newton step.
  bool safeguards = true;

  /// Throws std::invalid_argument on tol <= 0, max_iter < 1 or negative guards.
  void validate() const;
};

template <class T>
struct IterationRecord {
  int n;
  T x;
  T y;
  T yp;
  StepKind kind;
};

template <class T>
struct IterationTrace {
  std::vector<IterationRecord<T>> records;
  SolveStatus status = SolveStatus::max_iter;
  std::size_t f_evaluations = 0;
  std::size_t fp_evaluations = 0;

  const IterationRecord<T>& last() const { return records.back(); }
  bool converged() const { return status == SolveStatus::converged; }
  /// |y_n| for every record.
  std::vector<MPReal> residual_magnitudes() const;
};

template <class T>
using ScalarFunction = std::function<T(const T&)>;

template <class T>
IterationTrace<T> solve(const ScalarFunction<T>& f, const ScalarFunction<T>& fp, const T& x0,
                        const SolveConfig& cfg);

/// Parses `ftext`, differentiates it symbolically and runs solve().
/// Parse errors propagate as ParseError.
IterationTrace<MPReal> solve_expr(std::string_view ftext, const MPReal& x0, const SolveConfig& cfg);
IterationTrace<MPComplex> solve_expr(std::string_view ftext, const MPComplex& x0, const SolveConfig& cfg);

extern template struct IterationTrace<MPReal>;
extern template struct IterationTrace<MPComplex>;
extern template IterationTrace<MPReal> solve(const ScalarFunction<MPReal>&, const ScalarFunction<MPReal>&,
                                             const MPReal&, const SolveConfig&);
extern template IterationTrace<MPComplex> solve(const ScalarFunction<MPComplex>&,
                                                const ScalarFunction<MPComplex>&, const MPComplex&,
                                                const SolveConfig&);

}  // namespace ici
