#include "fisherflow/report.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <ostream>

namespace fisherflow::report {

DefectReport DefectReport::from_triple(double eps, double radius,
                                       const jets::FunctionalTriple& t) {
  DefectReport r;
  r.eps = eps;
  r.radius = radius;
  r.i_val = t.i_val;
  r.q_val = t.q_val;
  r.d_val = t.d_val;
  r.defect = t.i_val * t.d_val - t.q_val * t.q_val;  // recomputed on serialization
  r.ratio = t.ratio.value_or(std::numeric_limits<double>::quiet_NaN());
  return r;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw std::invalid_argument("Table: row width does not match header");
  }
  rows_.push_back(std::move(cells));
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    os << header_[i] << (i + 1 < header_.size() ? "," : "");
  }
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << row[i] << (i + 1 < row.size() ? "," : "");
    }
    os << '\n';
  }
}

void Table::write_json(std::ostream& os) const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < header_.size(); ++i) obj[header_[i]] = row[i];
    out.push_back(std::move(obj));
  }
  os << out.dump(2) << '\n';
}

Table defect_table(const std::vector<DefectReport>& reports) {
  Table table({"eps", "radius", "i", "q", "d", "defect", "ratio"});
  for (const auto& r : reports) {
    const double defect = r.i_val * r.d_val - r.q_val * r.q_val;
    table.add_row({format_full(r.eps), format_full(r.radius), format_full(r.i_val),
                   format_full(r.q_val), format_full(r.d_val), format_full(defect),
                   format_full(r.ratio)});
  }
  return table;
}

std::string resolve_output_path(const std::string& requested) {
  if (requested.empty() || requested == "-") return "-";
  std::filesystem::path path(requested);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("FISHERFLOW_OUT_DIR"); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  return path.string();
}

}  // namespace fisherflow::report
