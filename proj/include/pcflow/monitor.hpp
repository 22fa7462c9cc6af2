#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcflow {

inline constexpr std::array<const char*, 8> kMonitorColumns{
    "t", "min_sigma1", "max_sigma1", "min_sigma2", "min_H", "res_sigma1_sup", "res_sigma2_sup", "quotient_min"};

enum class Column { min_sigma1 = 0, max_sigma1, min_sigma2, min_H, res_sigma1_sup, res_sigma2_sup, quotient_min };

/// Which monitors a run records. Names as accepted in configs:
/// sigma1, sigma2, H, res_sigma1, res_sigma2, quotient.
struct MonitorSet {
  bool sigma1 = true;
  bool sigma2 = false;
  bool H = false;
  bool res_sigma1 = false;
  bool res_sigma2 = false;
  bool quotient = false;

  static MonitorSet parse(const std::vector<std::string>& names);
  std::vector<std::string> names() const;
  bool needs_quotient() const { return H || quotient; }
};

struct MonitorRow {
  double t = 0.0;
  std::array<std::optional<double>, 7> values{};

  std::optional<double>& operator[](Column c) { return values[static_cast<int>(c)]; }
  const std::optional<double>& operator[](Column c) const { return values[static_cast<int>(c)]; }
};

struct MonitorSeries {
  std::vector<MonitorRow> rows;
  std::string truncation;  // non-empty when the run aborted

  /// Appends a row; t must exceed the previous row's t.
  void append(const MonitorRow& row);
  /// Values of one column over all rows where it is present.
  std::vector<double> column(Column c) const;
  void write_csv(std::ostream& os) const;
};

std::string csv_header();
std::string csv_row(const MonitorRow& row);

/// Raised when a monitored quantity turns NaN or infinite; carries the rows recorded so far.
class FlowAborted : public std::runtime_error {
 public:
  FlowAborted(const std::string& what, MonitorSeries partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const MonitorSeries& partial() const { return partial_; }

 private:
  MonitorSeries partial_;
};

/// Throws FlowAborted if any value in `row` is NaN or infinite.
void check_finite(const MonitorRow& row, const MonitorSeries& so_far);

}  // namespace pcflow
