#include "spinorbit/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>

#include "spinorbit/errors.hpp"
#include "spinorbit/specfun.hpp"

namespace spinorbit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out))
    throw ParameterError("config: " + key + " expects a real number, got '" + v + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw ParameterError("config: " + key + " expects an integer, got '" + v + "'");
  return out;
}

void require_range(const char* key, int v, int lo, int hi) {
  if (v < lo || v > hi)
    throw ParameterError(std::string("config: ") + key + " = " + std::to_string(v) + " outside [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace

void RunConfig::validate() const {
  constants.validate();
  if (!(sigma_perp > 0.0) || !std::isfinite(sigma_perp)) throw ParameterError("config: sigma_perp must be positive");
  require_range("quadrature_order", quadrature_order, specfun::kMinQuadratureOrder, specfun::kMaxQuadratureOrder);
  require_range("n_max_spp", n_max_spp, 0, specfun::kLaguerreMaxDegree);
  require_range("n_max_quad", n_max_quad, 0, specfun::kLaguerreMaxDegree);
  require_range("ell_window", ell_window, 1, specfun::kLaguerreMaxDegree);
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "gamma_n")
    constants.gamma_n = parse_real(key, value);
  else if (key == "mass_n")
    constants.mass_n = parse_real(key, value);
  else if (key == "hbar")
    constants.hbar = parse_real(key, value);
  else if (key == "sigma_perp")
    sigma_perp = parse_real(key, value);
  else if (key == "quadrature_order")
    quadrature_order = parse_int(key, value);
  else if (key == "n_max_spp")
    n_max_spp = parse_int(key, value);
  else if (key == "n_max_quad")
    n_max_quad = parse_int(key, value);
  else if (key == "ell_window")
    ell_window = parse_int(key, value);
  else if (key == "output_path")
    output_path = value;
  else if (key == "format")
    format = parse_format(value);
  else
    throw ParameterError("config: unknown key '" + key + "'");
}

RunConfig parse_config(std::istream& in, RunConfig base, const std::string& source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParameterError(source + ":" + std::to_string(line_no) + ": expected key = value");
    try {
      base.set(trim(t.substr(0, eq)), t.substr(eq + 1));
    } catch (const ParameterError& e) {
      throw ParameterError(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  base.validate();
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path);
  return parse_config(in, std::move(base), path);
}

std::optional<std::string> default_config_path() {
  const char* v = std::getenv(kConfigEnvVar);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "jsonl"; }

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "jsonl" || s == "json-lines") return OutputFormat::jsonl;
  throw ParameterError("format must be csv or jsonl, got '" + s + "'");
}

void record_config(SweepTable& table, const RunConfig& config) {
  table.set_metadata("gamma_n", config.constants.gamma_n);
  table.set_metadata("mass_n", config.constants.mass_n);
  table.set_metadata("hbar", config.constants.hbar);
  table.set_metadata("sigma_perp", config.sigma_perp);
  table.set_metadata("quadrature_order", static_cast<double>(config.quadrature_order));
  table.set_metadata("n_max_spp", static_cast<double>(config.n_max_spp));
  table.set_metadata("n_max_quad", static_cast<double>(config.n_max_quad));
  table.set_metadata("ell_window", static_cast<double>(config.ell_window));
}

}  // namespace spinorbit
