#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SPINORBIT_CLI_PATH + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("fig 1 at a single q") {
  const Result r = run("fig 1 --from 0 --to 0 --step 1");
  CHECK(r.code == 0);
  const std::string header = "q,p_n0_l0,p_n0_l1,p_n0_lm1,p_n1_l1,p_n1_lm1\n";
  const auto pos = r.out.find(header);
  REQUIRE(pos != std::string::npos);
  std::istringstream row(r.out.substr(pos + header.size()));
  std::string q, p00, rest;
  std::getline(row, q, ',');
  std::getline(row, p00, ',');
  std::getline(row, rest);
  CHECK(q == "0");
  CHECK(std::stod(p00) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rest == "0,0,0,0");
}

TEST_CASE("usage errors exit 1") {
  CHECK(run("").code == 1);
  CHECK(run("fig 9").code == 1);
  CHECK(run("fig 2 --from 1").code == 1);
  CHECK(run("sweep --param gamma --from 0 --to 1 --step 0.1").code == 1);
  CHECK(run("design --gradient -1").code == 1);
  CHECK(run("--quadrature-order 4 fig 2").code == 1);
  CHECK(run("--help").code == 0);
}

TEST_CASE("non-convergence exits 2") {
  CHECK(run("--n-max-quad 2 fig 2 --from 0.2 --to 0.5 --step 0.1").code == 2);
}

TEST_CASE("I/O failures exit 3") {
  CHECK(run("--out /nonexistent/dir/x.csv fig 5").code == 3);
  CHECK(run("--config /nonexistent/dir/x.conf fig 5").code == 3);
}

TEST_CASE("output file, format flag and determinism") {
  const std::string a = "cli_test_a.csv", b = "cli_test_b.csv";
  REQUIRE(run("--out " + a + " fig 3 --from 1 --to 2.5 --step 0.05").code == 0);
  REQUIRE(run("fig 3 --from 1 --to 2.5 --step 0.05 --out " + b).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("ratio,conc_eta0,conc_eta1,conc_eta2,p_eta0,p_eta1,p_eta2") != std::string::npos);
  std::remove(a.c_str());
  std::remove(b.c_str());

  const Result j = run("--format jsonl fig 5 --from 0 --to 0 --step 1");
  CHECK(j.code == 0);
  CHECK(j.out.rfind("{\"schema\":\"spinorbit-sweep/1\"", 0) == 0);
}

TEST_CASE("config file precedence: flags over file over defaults") {
  const std::string conf = "cli_test.conf";
  {
    std::ofstream out(conf);
    out << "n_max_quad = 40\nquadrature_order = 96\n";
  }
  const Result r = run("--config " + conf + " --n-max-quad 50 fig 2 --from 1 --to 1 --step 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("# n_max_quad=50\n") != std::string::npos);
  CHECK(r.out.find("# quadrature_order=96\n") != std::string::npos);

  const Result e = run("fig 2 --from 1 --to 1 --step 1", "SPINORBIT_CONFIG=" + conf);
  CHECK(e.out.find("# n_max_quad=40\n") != std::string::npos);

  {
    std::ofstream out(conf);
    out << "unknown_key = 1\n";
  }
  CHECK(run("--config " + conf + " fig 5").code == 1);
  std::remove(conf.c_str());
}

TEST_CASE("design prints the magnet table") {
  const Result r = run("design --gradient 13.8 --length 10 --lambda 0.271 --sigma 100");
  CHECK(r.code == 0);
  for (const char* key : {"v_z", "t_Q", "r_c", "r_c/sigma_perp  1.8135", "conc_eta0", "conc_eta1", "conc_eta2",
                          "conc_traced", "bore_diameter"})
    CHECK(r.out.find(key) != std::string::npos);
}

TEST_CASE("check emits one line per criterion") {
  const Result r = run("check --criteria 3,5,8");
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
  CHECK(r.out.find("\"criterion\":3") != std::string::npos);
  CHECK(r.out.find("\"status\":\"pass\"") != std::string::npos);

  const Result q = run("--quadrature-order 8 check --criteria 9,11");
  CHECK(q.code != 0);
  CHECK(q.out.find("\"status\":\"pass\"") == std::string::npos);

  const Result u = run("--n-max-quad 2 check --criteria 4");
  CHECK(u.code != 0);
  CHECK(u.out.find("\"status\":\"fail\"") != std::string::npos);
}

TEST_CASE("sweep subcommand") {
  const Result r = run("sweep --param beta --from 0 --to 3.2 --step 0.8 --theta 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("beta,I_up,I_down\n0,") != std::string::npos);
}
