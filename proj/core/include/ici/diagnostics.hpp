#pragma once

// Convergence diagnostics over residual sequences |y_0|, |y_1|, ...
//
// All functions take absolute residuals; the trace overloads just extract
// them. Indices in the results are trace indices k.

#include <optional>
#include <span>
#include <vector>

#include "ici/mpreal.hpp"
#include "ici/solve.hpp"

namespace ici {

struct IndexedValue {
  int k;
  MPReal value;
};

/// 1 + sqrt(3) at precision p.
MPReal ici_order(Precision p);

/// r_k = |y_k| / (|y_{k-1}| |y_{k-2}|)^2 for k >= 2. Stops at the first k
/// whose predecessors include a zero residual.
std::vector<IndexedValue> ratio_sequence(std::span<const MPReal> residuals);

/// C = |y_K|^((1+sqrt 3)^-K) for the final index K, so that y_K = C^((1+sqrt 3)^K).
/// Throws FitUndefinedError unless 0 < |y_K| < 1 and K >= 1.
MPReal fit_constant(std::span<const MPReal> residuals);

/// r_last * (|y_K| |y_{K-1}|)^2. Throws FitUndefinedError when no ratio exists.
MPReal predict_next(std::span<const MPReal> residuals);

/// rho_k = ln|y_{k+1}| / ln|y_k|, reported at index k+1, for every k with
/// 0 < |y_{k+1}| < |y_k| < 1. Other k are skipped.
std::vector<IndexedValue> order_estimate(std::span<const MPReal> residuals);

/// Numerator form for the leading error constant of the two-point inverse
/// cubic step.
enum class ErrorConstantForm {
  /// f1^2 f4 - 10 f1 f2 f3 + 15 f2^3, from the Taylor series of the inverse
  /// function. Matches observed ratio limits.
  inverse_series,
  /// f2 f4 - 10 f1 f2 f3 + 15 f2^3, the form commonly printed for this
  /// iteration. Kept for comparison.
  as_printed,
};

/// K = numerator / (24 f1^3), the coefficient in
/// x_{n+1} - r ~ K (e_{n-1} e_n)^2. Throws MultipleRootError when f1 == 0.
MPReal error_constant_oracle(const MPReal& f1, const MPReal& f2, const MPReal& f3, const MPReal& f4,
                             ErrorConstantForm form = ErrorConstantForm::inverse_series);

/// Limit of the residual ratio y_{n+1} / (y_n y_{n-1})^2 implied by K: |K / f1^3|.
MPReal residual_ratio_limit(const MPReal& error_constant, const MPReal& f1);

struct ConvergenceReport {
  std::vector<IndexedValue> digits_per_step;  // -log10|y_k|
  std::vector<IndexedValue> ratios;
  std::vector<IndexedValue> order_estimates;
  std::optional<MPReal> fitted_constant;
  std::optional<MPReal> predicted_next;
  /// log10 of predicted / actual |y_{K-1}| under the fitted law; a quality
  /// measure for the constant fit.
  std::optional<MPReal> fit_misfit_log10;
  /// -log10|x_k - root| when a reference root was supplied.
  std::vector<IndexedValue> forward_digits;
};

ConvergenceReport analyze(std::span<const MPReal> residuals);
/// Also fills forward_digits against `reference_root`.
ConvergenceReport analyze(const IterationTrace<MPReal>& trace, const std::optional<MPReal>& reference_root = {});
ConvergenceReport analyze(const IterationTrace<MPComplex>& trace);

}  // namespace ici
