#include "ici/diagnostics.hpp"

#include "ici/errors.hpp"

namespace ici {

MPReal ici_order(Precision p) { return sqrt(MPReal(3L, p)) + 1L; }

std::vector<IndexedValue> ratio_sequence(std::span<const MPReal> residuals) {
  std::vector<IndexedValue> out;
  for (std::size_t k = 2; k < residuals.size(); ++k) {
    const MPReal& a = residuals[k - 1];
    const MPReal& b = residuals[k - 2];
    if (a.is_zero() || b.is_zero()) break;
    const MPReal prod = abs(a) * abs(b);
    out.push_back({static_cast<int>(k), abs(residuals[k]) / (prod * prod)});
  }
  return out;
}

MPReal fit_constant(std::span<const MPReal> residuals) {
  if (residuals.size() < 2) throw FitUndefinedError("fit needs at least two residuals");
  const MPReal yk = abs(residuals.back());
  if (yk.is_zero() || !(yk < MPReal(1L, Precision(Precision::kMinDigits)))) {
    throw FitUndefinedError("fit needs 0 < |y_K| < 1, got " + yk.to_string(8));
  }
  const long K = static_cast<long>(residuals.size() - 1);
  const MPReal growth = pow(sqrt(constant_like(yk, 3)) + 1L, K);
  // y_K^(1/growth) = exp(ln y_K / growth)
  return exp(log(yk) / growth);
}

MPReal predict_next(std::span<const MPReal> residuals) {
  const auto ratios = ratio_sequence(residuals);
  if (ratios.empty() || ratios.back().k != static_cast<int>(residuals.size() - 1)) {
    throw FitUndefinedError("prediction needs a ratio at the final index");
  }
  const MPReal prod = abs(residuals[residuals.size() - 1]) * abs(residuals[residuals.size() - 2]);
  return ratios.back().value * prod * prod;
}

std::vector<IndexedValue> order_estimate(std::span<const MPReal> residuals) {
  std::vector<IndexedValue> out;
  for (std::size_t k = 0; k + 1 < residuals.size(); ++k) {
    const MPReal a = abs(residuals[k]);
    const MPReal b = abs(residuals[k + 1]);
    if (a.is_zero() || b.is_zero() || !a.is_finite() || !b.is_finite()) continue;
    if (!(b < a) || !(a < constant_like(a, 1))) continue;
    out.push_back({static_cast<int>(k + 1), log(b) / log(a)});
  }
  return out;
}

MPReal error_constant_oracle(const MPReal& f1, const MPReal& f2, const MPReal& f3, const MPReal& f4,
                             ErrorConstantForm form) {
  if (f1.is_zero()) throw MultipleRootError();
  const MPReal lead = form == ErrorConstantForm::inverse_series ? f1 * f1 * f4 : f2 * f4;
  const MPReal numerator = lead - f1 * f2 * f3 * 10L + f2 * f2 * f2 * 15L;
  return numerator / (f1 * f1 * f1 * 24L);
}

MPReal residual_ratio_limit(const MPReal& error_constant, const MPReal& f1) {
  return abs(error_constant / (f1 * f1 * f1));
}

ConvergenceReport analyze(std::span<const MPReal> residuals) {
  ConvergenceReport report;
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    report.digits_per_step.push_back({static_cast<int>(k), -log10_abs(residuals[k])});
  }
  report.ratios = ratio_sequence(residuals);
  report.order_estimates = order_estimate(residuals);
  try {
    report.fitted_constant = fit_constant(residuals);
  } catch (const FitUndefinedError&) {
  }
  try {
    report.predicted_next = predict_next(residuals);
  } catch (const FitUndefinedError&) {
  }
  if (report.fitted_constant && residuals.size() >= 3) {
    const std::size_t km1 = residuals.size() - 2;
    const MPReal& actual = residuals[km1];
    if (!actual.is_zero()) {
      const MPReal& c = *report.fitted_constant;
      const MPReal order = sqrt(constant_like(c, 3)) + 1L;
      const MPReal predicted = pow(c, pow(order, static_cast<long>(km1)));
      report.fit_misfit_log10 = log10_abs(predicted) - log10_abs(actual);
    }
  }
  return report;
}

ConvergenceReport analyze(const IterationTrace<MPReal>& trace, const std::optional<MPReal>& reference_root) {
  const auto residuals = trace.residual_magnitudes();
  ConvergenceReport report = analyze(residuals);
  if (reference_root) {
    for (const auto& r : trace.records) {
      report.forward_digits.push_back({r.n, -log10_abs(r.x - *reference_root)});
    }
  }
  return report;
}

ConvergenceReport analyze(const IterationTrace<MPComplex>& trace) {
  const auto residuals = trace.residual_magnitudes();
  return analyze(residuals);
}

}  // namespace ici
