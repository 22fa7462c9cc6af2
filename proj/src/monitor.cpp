#include "pcflow/monitor.hpp"

#include <cmath>

#include <fmt/format.h>

namespace pcflow {

MonitorSet MonitorSet::parse(const std::vector<std::string>& names) {
  MonitorSet m;
  m.sigma1 = false;
  for (const auto& n : names) {
    if (n == "sigma1") m.sigma1 = true;
    else if (n == "sigma2") m.sigma2 = true;
    else if (n == "H") m.H = true;
    else if (n == "res_sigma1") m.res_sigma1 = true;
    else if (n == "res_sigma2") m.res_sigma2 = true;
    else if (n == "quotient") m.quotient = true;
    else throw std::invalid_argument("unknown monitor '" + n + "'");
  }
  return m;
}

std::vector<std::string> MonitorSet::names() const {
  std::vector<std::string> out;
  if (sigma1) out.emplace_back("sigma1");
  if (sigma2) out.emplace_back("sigma2");
  if (H) out.emplace_back("H");
  if (res_sigma1) out.emplace_back("res_sigma1");
  if (res_sigma2) out.emplace_back("res_sigma2");
  if (quotient) out.emplace_back("quotient");
  return out;
}

void MonitorSeries::append(const MonitorRow& row) {
  if (!rows.empty() && !(row.t > rows.back().t)) throw std::logic_error("monitor rows must have increasing t");
  rows.push_back(row);
}

std::vector<double> MonitorSeries::column(Column c) const {
  std::vector<double> out;
  for (const auto& r : rows)
    if (r[c]) out.push_back(*r[c]);
  return out;
}

std::string csv_header() {
  std::string s;
  for (std::size_t i = 0; i < kMonitorColumns.size(); ++i) {
    if (i) s += ',';
    s += kMonitorColumns[i];
  }
  return s;
}

std::string csv_row(const MonitorRow& row) {
  std::string s = fmt::format("{:.17g}", row.t);
  for (const auto& v : row.values) {
    s += ',';
    if (v) s += fmt::format("{:.17g}", *v);
  }
  return s;
}

void MonitorSeries::write_csv(std::ostream& os) const {
  os << csv_header() << '\n';
  for (const auto& r : rows) os << csv_row(r) << '\n';
  if (!truncation.empty()) os << "# truncated: " << truncation << '\n';
}

void check_finite(const MonitorRow& row, const MonitorSeries& so_far) {
  for (std::size_t i = 0; i < row.values.size(); ++i)
    if (row.values[i] && !std::isfinite(*row.values[i])) {
      MonitorSeries partial = so_far;
      const std::string what = fmt::format("{} in {} at t={:.17g}", *row.values[i], kMonitorColumns[i + 1], row.t);
      partial.truncation = what;
      throw FlowAborted(what, std::move(partial));
    }
}

}  // namespace pcflow
