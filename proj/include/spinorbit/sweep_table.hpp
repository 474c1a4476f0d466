#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace spinorbit {

inline constexpr const char* kSweepSchemaVersion = "spinorbit-sweep/1";

/// Ordered rows of (sweep parameter, observables) plus the run parameters
/// that produced them.
class SweepTable {
 public:
  SweepTable() = default;
  explicit SweepTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

  /// Throws ParameterError if the arity differs from the column count.
  void add_row(std::vector<double> row);
  /// Replaces an existing key in place, otherwise appends.
  void set_metadata(const std::string& key, const std::string& value);
  void set_metadata(const std::string& key, double value);

  std::size_t column_index(const std::string& name) const;
  double at(std::size_t row, const std::string& column) const;
  std::vector<double> column(const std::string& name) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::pair<std::string, std::string>> metadata_;
};

/// Shortest round-trip decimal representation.
std::string format_number(double v);

/// `#`-prefixed schema and metadata lines, header, then one line per row.
void write_csv(std::ostream& os, const SweepTable& table);
/// First line is {"schema":..,"metadata":{..}}; every following line one row object.
void write_jsonl(std::ostream& os, const SweepTable& table);

/// Evenly spaced grid from..to inclusive (within step/1e6), computed as
/// from + i*step to avoid accumulated drift.
std::vector<double> linear_grid(double from, double to, double step);

}  // namespace spinorbit
