#pragma once

#include "fisherflow/jets.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fisherflow::report {

/// One Gaussian-envelope row: the triple plus derived defect and ratio.
struct DefectReport {
  double eps{0};
  double radius{0};
  double i_val{0};
  double q_val{0};
  double d_val{0};
  double defect{0};
  double ratio{0};

  static DefectReport from_triple(double eps, double radius, const jets::FunctionalTriple& t);
};

/// Full 17-significant-digit decimal form; round-trips exactly.
std::string format_full(double v);

/// Header plus rows of preformatted cells; CSV and JSON emit identical values.
class Table {
 public:
  explicit Table(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

Table defect_table(const std::vector<DefectReport>& reports);

/// Resolves an output path: "-" means stdout; relative paths are placed under
/// the FISHERFLOW_OUT_DIR environment variable when it is set.
std::string resolve_output_path(const std::string& requested);

}  // namespace fisherflow::report
