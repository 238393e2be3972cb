#include "icim/cli/output_table.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "icim/error.hpp"

namespace icim::cli {

namespace {

std::string header_cell(const Column& c) { return c.name + " (" + c.unit + ")"; }

Column parse_header_cell(const std::string& cell) {
  const auto open = cell.rfind(" (");
  if (open == std::string::npos || cell.back() != ')') throw DomainError("CSV header cell without unit: " + cell);
  return {cell.substr(0, open), cell.substr(open + 2, cell.size() - open - 3)};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(line);
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw DomainError("number formatting failed");
  return std::string(buf, ptr);
}

int OutputTable::column_index(const std::string& name) const {
  for (size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].name == name) return static_cast<int>(i);
  throw DomainError("no column named " + name);
}

double OutputTable::at(int row, const std::string& column) const { return rows_.at(row).at(column_index(column)); }

void OutputTable::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) throw DomainError("row width does not match the column schema");
  for (double v : row)
    if (!std::isfinite(v)) throw DomainError("table cells must be finite");
  rows_.push_back(std::move(row));
}

void OutputTable::add_column(Column column, const std::vector<double>& values) {
  if (values.size() != rows_.size()) throw DomainError("new column length does not match the row count");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("table cells must be finite");
  columns_.push_back(std::move(column));
  for (size_t i = 0; i < rows_.size(); ++i) rows_[i].push_back(values[i]);
}

std::string OutputTable::to_csv() const {
  std::string s;
  for (const auto& [k, v] : metadata) s += "# meta." + k + "=" + v + "\n";
  for (const auto& [k, v] : config) s += "# config." + k + "=" + v + "\n";
  for (size_t i = 0; i < columns_.size(); ++i) s += (i ? "," : "") + header_cell(columns_[i]);
  s += "\n";
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_number(row[i]);
    s += "\n";
  }
  return s;
}

OutputTable OutputTable::from_csv(const std::string& text) {
  OutputTable t;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      const auto body = line.substr(2);
      const auto dot = body.find('.');
      const auto eq = body.find('=');
      if (dot == std::string::npos || eq == std::string::npos || eq < dot)
        throw DomainError("malformed CSV comment: " + line);
      const auto section = body.substr(0, dot);
      const auto key = body.substr(dot + 1, eq - dot - 1);
      const auto value = body.substr(eq + 1);
      if (section == "meta") t.metadata[key] = value;
      else if (section == "config") t.config[key] = value;
      else throw DomainError("unknown CSV comment section: " + section);
      continue;
    }
    if (!header) {
      for (const auto& cell : split(line, ',')) t.columns_.push_back(parse_header_cell(cell));
      header = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split(line, ',')) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size()) throw DomainError("bad CSV number: " + cell);
      row.push_back(v);
    }
    t.add_row(std::move(row));
  }
  return t;
}

std::string OutputTable::to_json() const {
  nlohmann::ordered_json j;
  j["metadata"] = metadata;
  j["config"] = config;
  auto cols = nlohmann::json::array();
  for (const auto& c : columns_) cols.push_back({{"name", c.name}, {"unit", c.unit}});
  j["columns"] = cols;
  j["rows"] = rows_;
  return j.dump(2) + "\n";
}

OutputTable OutputTable::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  OutputTable t;
  t.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  t.config = j.at("config").get<std::map<std::string, std::string>>();
  for (const auto& c : j.at("columns")) t.columns_.push_back({c.at("name"), c.at("unit")});
  for (const auto& r : j.at("rows")) t.add_row(r.get<std::vector<double>>());
  return t;
}

}  // namespace icim::cli
