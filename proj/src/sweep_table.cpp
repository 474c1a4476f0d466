#include "spinorbit/sweep_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include "json.hpp"

#include "spinorbit/errors.hpp"

namespace spinorbit {

SweepTable::SweepTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw ParameterError("SweepTable: at least one column is required");
}

void SweepTable::add_row(std::vector<double> row) {
  if (row.size() != columns_.size())
    throw ParameterError("SweepTable: row has " + std::to_string(row.size()) + " values, expected " +
                         std::to_string(columns_.size()));
  rows_.push_back(std::move(row));
}

void SweepTable::set_metadata(const std::string& key, const std::string& value) {
  for (auto& [k, v] : metadata_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  metadata_.emplace_back(key, value);
}

void SweepTable::set_metadata(const std::string& key, double value) { set_metadata(key, format_number(value)); }

std::size_t SweepTable::column_index(const std::string& name) const {
  const auto it = std::find(columns_.begin(), columns_.end(), name);
  if (it == columns_.end()) throw ParameterError("SweepTable: no column named " + name);
  return static_cast<std::size_t>(it - columns_.begin());
}

double SweepTable::at(std::size_t row, const std::string& column) const {
  if (row >= rows_.size()) throw ParameterError("SweepTable: row index out of range");
  return rows_[row][column_index(column)];
}

std::vector<double> SweepTable::column(const std::string& name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[c]);
  return out;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const SweepTable& table) {
  os << "# schema=" << kSweepSchemaVersion << '\n';
  for (const auto& [k, v] : table.metadata()) os << "# " << k << '=' << v << '\n';
  const auto& cols = table.columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
    os << '\n';
  }
}

void write_jsonl(std::ostream& os, const SweepTable& table) {
  nlohmann::ordered_json head;
  head["schema"] = kSweepSchemaVersion;
  head["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : table.metadata()) head["metadata"][k] = v;
  head["columns"] = table.columns();
  os << head.dump() << '\n';
  for (const auto& row : table.rows()) {
    nlohmann::ordered_json line = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (std::isfinite(row[i]))
        line[table.columns()[i]] = row[i];
      else
        line[table.columns()[i]] = format_number(row[i]);
    }
    os << line.dump() << '\n';
  }
}

std::vector<double> linear_grid(double from, double to, double step) {
  if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step))
    throw ParameterError("linear_grid: bounds and step must be finite");
  if (!(step > 0.0)) throw ParameterError("linear_grid: step must be positive");
  if (to < from) throw ParameterError("linear_grid: 'to' must not be below 'from'");
  const double span = (to - from) / step;
  if (span > 1e7) throw ParameterError("linear_grid: more than 1e7 points");
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-6)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(from + static_cast<double>(i) * step);
  return grid;
}

}  // namespace spinorbit
