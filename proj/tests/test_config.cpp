#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spinorbit/config.hpp"
#include "spinorbit/errors.hpp"

using namespace spinorbit;

TEST_CASE("defaults") {
  const RunConfig c;
  CHECK(c.quadrature_order == 128);
  CHECK(c.n_max_spp == 200);
  CHECK(c.n_max_quad == 60);
  CHECK(c.ell_window == 50);
  CHECK(c.sigma_perp == 100e-9);
  CHECK(c.format == OutputFormat::csv);
  CHECK(c.output_path.empty());
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("key = value parsing") {
  std::istringstream in(
      "# comment\n"
      "\n"
      "quadrature_order = 64\n"
      "n_max_quad=30\n"
      "  sigma_perp = 2e-7  \n"
      "gamma_n = 1.8e8\n"
      "format = jsonl\n"
      "output_path = out.csv\n");
  const RunConfig c = parse_config(in);
  CHECK(c.quadrature_order == 64);
  CHECK(c.n_max_quad == 30);
  CHECK(c.sigma_perp == 2e-7);
  CHECK(c.constants.gamma_n == 1.8e8);
  CHECK(c.format == OutputFormat::jsonl);
  CHECK(c.output_path == "out.csv");
  CHECK(c.n_max_spp == 200);
}

TEST_CASE("parse errors") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return parse_config(in);
  };
  CHECK_THROWS_AS(parse("bogus = 1\n"), ParameterError);
  CHECK_THROWS_AS(parse("quadrature_order = 1.5\n"), ParameterError);
  CHECK_THROWS_AS(parse("quadrature_order\n"), ParameterError);
  CHECK_THROWS_AS(parse("quadrature_order = 4\n"), ParameterError);
  CHECK_THROWS_AS(parse("n_max_quad = 600\n"), ParameterError);
  CHECK_THROWS_AS(parse("ell_window = 0\n"), ParameterError);
  CHECK_THROWS_AS(parse("sigma_perp = -1\n"), ParameterError);
  CHECK_THROWS_AS(parse("hbar = 0\n"), ParameterError);
  CHECK_THROWS_AS(parse("format = xml\n"), ParameterError);
  try {
    parse("\n\nbogus = 1\n");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
}

TEST_CASE("file loading and environment default") {
  const std::string path = "test_config_tmp.conf";
  {
    std::ofstream out(path);
    out << "n_max_spp = 120\n";
  }
  CHECK(load_config_file(path).n_max_spp == 120);
  CHECK_THROWS_AS(load_config_file("/nonexistent/dir/none.conf"), IoError);

  ::setenv(kConfigEnvVar, path.c_str(), 1);
  REQUIRE(default_config_path().has_value());
  CHECK(*default_config_path() == path);
  ::setenv(kConfigEnvVar, "", 1);
  CHECK_FALSE(default_config_path().has_value());
  ::unsetenv(kConfigEnvVar);
  CHECK_FALSE(default_config_path().has_value());
  std::remove(path.c_str());
}

TEST_CASE("metadata records every numerical field") {
  SweepTable t({"x"});
  RunConfig c;
  c.n_max_quad = 17;
  record_config(t, c);
  std::vector<std::string> keys;
  for (const auto& [k, v] : t.metadata()) keys.push_back(k);
  for (const char* k : {"gamma_n", "mass_n", "hbar", "sigma_perp", "quadrature_order", "n_max_spp", "n_max_quad", "ell_window"})
    CHECK(std::find(keys.begin(), keys.end(), k) != keys.end());
  CHECK(t.metadata()[6].second == "17");
}
