#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "spinorbit/constants.hpp"
#include "spinorbit/sweep_table.hpp"

namespace spinorbit {

enum class OutputFormat { csv, jsonl };

/// Environment variable naming the config file used when --config is absent.
inline constexpr const char* kConfigEnvVar = "SPINORBIT_CONFIG";

/// Run-wide numerical and output settings.
struct RunConfig {
  PhysicalConstants constants;
  double sigma_perp = 100e-9;  ///< m
  int quadrature_order = 128;
  int n_max_spp = 200;
  int n_max_quad = 60;
  int ell_window = 50;
  std::string output_path;  ///< empty writes to stdout
  OutputFormat format = OutputFormat::csv;

  /// Throws ParameterError when a field is outside the range its module accepts.
  void validate() const;

  /// Assigns one field from its textual form. Keys are the field names;
  /// constants use gamma_n, mass_n and hbar. Unknown keys and malformed
  /// values throw ParameterError.
  void set(const std::string& key, const std::string& value);
};

/// Parses flat `key = value` lines on top of `base`. Blank lines and lines
/// starting with '#' are skipped.
RunConfig parse_config(std::istream& in, RunConfig base = {}, const std::string& source = "<config>");
/// Throws IoError when the file cannot be read.
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Value of SPINORBIT_CONFIG when set and non-empty.
std::optional<std::string> default_config_path();

std::string to_string(OutputFormat f);
OutputFormat parse_format(const std::string& s);

/// Records every numerical field of `config` in the table metadata.
void record_config(SweepTable& table, const RunConfig& config);

}  // namespace spinorbit
