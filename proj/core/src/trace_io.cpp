#include "ici/trace_io.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "ici/errors.hpp"
#include "json.hpp"

namespace ici {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(0, 1);
    cells.push_back(cell);
  }
  return cells;
}

bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line != "\r" && line.front() != '#') return true;
  }
  return false;
}

std::string format_log10(const MPReal& y, int digits = 12) { return log10_abs(y).to_string(digits); }

std::string render(const MPReal& v) { return v.to_string(0); }
std::string render(const MPComplex& v) { return v.to_string(0); }

nlohmann::ordered_json optional_text(const std::optional<MPReal>& v, int digits) {
  if (!v) return nullptr;
  return v->to_string(digits);
}

}  // namespace

template <class T>
void write_trace_csv(std::ostream& out, const IterationTrace<T>& trace) {
  out << "n,x,y,yp,step_kind,log10_abs_y\n";
  for (const auto& r : trace.records) {
    out << r.n << ',' << render(r.x) << ',' << render(r.y) << ',' << render(r.yp) << ',' << to_string(r.kind)
        << ',' << format_log10(magnitude(r.y)) << '\n';
  }
}

template <class T>
void write_trace_text(std::ostream& out, const IterationTrace<T>& trace, const RunMetadata& meta) {
  nlohmann::ordered_json j;
  j["function"] = meta.function;
  j["x0"] = meta.x0;
  j["digits"] = meta.digits;
  j["tol"] = meta.tol;
  j["method"] = meta.method;
  j["status"] = std::string(to_string(trace.status));
  j["f_evaluations"] = trace.f_evaluations;
  j["fp_evaluations"] = trace.fp_evaluations;
  auto& recs = j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : trace.records) {
    recs.push_back({{"n", r.n},
                    {"x", render(r.x)},
                    {"y", render(r.y)},
                    {"yp", render(r.yp)},
                    {"step_kind", std::string(to_string(r.kind))},
                    {"log10_abs_y", format_log10(magnitude(r.y))}});
  }
  out << j.dump(2) << '\n';
}

template void write_trace_csv(std::ostream&, const IterationTrace<MPReal>&);
template void write_trace_csv(std::ostream&, const IterationTrace<MPComplex>&);
template void write_trace_text(std::ostream&, const IterationTrace<MPReal>&, const RunMetadata&);
template void write_trace_text(std::ostream&, const IterationTrace<MPComplex>&, const RunMetadata&);

IterationTrace<MPReal> read_trace_csv(std::istream& in, Precision p) {
  std::string line;
  if (!next_data_line(in, line)) throw Error("trace CSV is empty");
  const auto header = split_csv(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* name : {"n", "x", "y", "yp", "step_kind"}) {
    if (!col.count(name)) throw Error(std::string("trace CSV lacks column '") + name + "'");
  }
  IterationTrace<MPReal> trace;
  while (next_data_line(in, line)) {
    const auto cells = split_csv(line);
    if (cells.size() < header.size()) throw Error("short trace CSV row: " + line);
    const auto kind = parse_step_kind(cells[col["step_kind"]]);
    if (!kind) throw Error("unknown step kind '" + cells[col["step_kind"]] + "'");
    trace.records.push_back({std::stoi(cells[col["n"]]), MPReal(cells[col["x"]], p), MPReal(cells[col["y"]], p),
                             MPReal(cells[col["yp"]], p), *kind});
  }
  trace.f_evaluations = trace.fp_evaluations = trace.records.size();
  return trace;
}

std::vector<MPReal> read_residuals_csv(std::istream& in, Precision p) {
  std::string line;
  if (!next_data_line(in, line)) throw Error("residual CSV is empty");
  const auto header = split_csv(line);
  std::size_t column = 1;
  bool has_header = false;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "y") column = i;
  }
  try {
    if (header.size() > column) MPReal(header[column], p);
  } catch (const ParseError&) {
    has_header = true;
  }
  std::vector<MPReal> out;
  auto take = [&](const std::vector<std::string>& cells) {
    if (cells.size() <= column) throw Error("residual CSV row has no column " + std::to_string(column));
    out.push_back(abs(MPReal(cells[column], p)));
  };
  if (!has_header) take(header);
  while (next_data_line(in, line)) take(split_csv(line));
  return out;
}

void write_report_csv(std::ostream& out, const ConvergenceReport& report) {
  std::map<int, std::string> ratio, order;
  for (const auto& r : report.ratios) ratio[r.k] = r.value.to_string(12);
  for (const auto& r : report.order_estimates) order[r.k] = r.value.to_string(12);
  out << "k,log10_abs_y,ratio,order_estimate\n";
  for (const auto& d : report.digits_per_step) {
    out << d.k << ',' << (-d.value).to_string(12) << ',' << ratio[d.k] << ',' << order[d.k] << '\n';
  }
}

void write_report_text(std::ostream& out, const ConvergenceReport& report, const RunMetadata& meta) {
  nlohmann::ordered_json j;
  j["function"] = meta.function;
  j["x0"] = meta.x0;
  j["digits"] = meta.digits;
  j["tol"] = meta.tol;
  j["method"] = meta.method;
  auto series = [](const std::vector<IndexedValue>& values, int digits) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& v : values) arr.push_back({{"k", v.k}, {"value", v.value.to_string(digits)}});
    return arr;
  };
  j["digits_per_step"] = series(report.digits_per_step, 12);
  j["ratios"] = series(report.ratios, 12);
  j["order_estimates"] = series(report.order_estimates, 12);
  j["fitted_constant"] = optional_text(report.fitted_constant, 12);
  j["predicted_next"] = optional_text(report.predicted_next, 12);
  j["fit_misfit_log10"] = optional_text(report.fit_misfit_log10, 8);
  if (!report.forward_digits.empty()) j["forward_digits"] = series(report.forward_digits, 8);
  out << j.dump(2) << '\n';
}

void write_plot_data(std::ostream& out, std::span<const MPReal> residuals) {
  out << "k,log10_abs_y\n";
  for (std::size_t k = 0; k < residuals.size(); ++k) out << k << ',' << format_log10(residuals[k]) << '\n';
}

}  // namespace ici
