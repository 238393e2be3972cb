#pragma once

#include <map>
#include <string>
#include <vector>

namespace icim::cli {

struct Column {
  std::string name;
  std::string unit;  // "-" for dimensionless

  bool operator==(const Column&) const = default;
};

/// Rectangular table of finite numbers plus string metadata and the
/// effective run configuration.
class OutputTable {
 public:
  OutputTable() = default;
  explicit OutputTable(std::vector<Column> columns) : columns_(std::move(columns)) {}

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  int column_index(const std::string& name) const;
  double at(int row, const std::string& column) const;

  /// Throws DomainError on a width mismatch or a non-finite cell.
  void add_row(std::vector<double> row);
  /// Appends a column; `values` must have one entry per row.
  void add_column(Column column, const std::vector<double>& values);

  std::map<std::string, std::string> metadata;
  std::map<std::string, std::string> config;

  /// Comment lines "# meta.key=value" and "# config.key=value", then a
  /// header of "name (unit)" and the rows. Numbers use the shortest
  /// representation that reads back exactly.
  std::string to_csv() const;
  std::string to_json() const;
  static OutputTable from_csv(const std::string& text);
  static OutputTable from_json(const std::string& text);

  bool operator==(const OutputTable&) const = default;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<double>> rows_;
};

std::string format_number(double v);

}  // namespace icim::cli
