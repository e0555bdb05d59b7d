#pragma once

// CSV and structured-text (JSON) forms of traces and convergence reports.
// Every number is written as a full-precision decimal string so residuals
// far below double range survive a round trip.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ici/diagnostics.hpp"
#include "ici/solve.hpp"

namespace ici {

struct RunMetadata {
  std::string function;
  std::string x0;
  int digits = 0;
  std::string tol;
  std::string method;
};

/// Columns: n,x,y,yp,step_kind,log10_abs_y
template <class T>
void write_trace_csv(std::ostream& out, const IterationTrace<T>& trace);

/// JSON object with run metadata, status, evaluation counts and records.
template <class T>
void write_trace_text(std::ostream& out, const IterationTrace<T>& trace, const RunMetadata& meta);

/// Reads a CSV written by write_trace_csv.
IterationTrace<MPReal> read_trace_csv(std::istream& in, Precision p);

/// Residual column of a CSV: the column headed "y", otherwise the second
/// column. A bare two-column "k,y" file is accepted.
std::vector<MPReal> read_residuals_csv(std::istream& in, Precision p);

/// Columns: k,log10_abs_y,ratio,order_estimate (blank where undefined).
void write_report_csv(std::ostream& out, const ConvergenceReport& report);
void write_report_text(std::ostream& out, const ConvergenceReport& report, const RunMetadata& meta);

/// Two columns k,log10_abs_y for external plotting.
void write_plot_data(std::ostream& out, std::span<const MPReal> residuals);

}  // namespace ici
