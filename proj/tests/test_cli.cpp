#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "polyfock/cpoly.hpp"
#include "polyfock/expr.hpp"
#include "polyfock/fockbasis.hpp"
#include "polyfock/numeric.hpp"

using namespace polyfock;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("POLYFOCK_BIN");
  REQUIRE(bin != nullptr);
  const std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

int count_lines(const std::string& s) {
  int lines = 0;
  for (char c : s)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("basis subcommand prints re-parseable polynomials") {
  const RunResult r11 = run_cli("basis --j 1 --k 1");
  CHECK(r11.exit_code == 0);
  CHECK(r11.out == "-pi*z*zbar + 1\n");

  const RunResult r00 = run_cli("basis --j 0 --k 0");
  CHECK(r00.exit_code == 0);
  CHECK(r00.out == "1\n");

  const RunResult reval = run_cli("basis --j 1 --k 0 --eval 0");
  CHECK(reval.exit_code == 0);
  CHECK(reval.out == "-1.7724538509055161*zbar\n[0, 0]\n");

  // Round trip: the first printed line re-parses to the same coefficients
  // (up to the documented 1e-12 relative pi-recognition).
  for (int j = 0; j <= 3; ++j)
    for (int k = 0; k <= 4; ++k) {
      const RunResult r = run_cli("basis --j " + std::to_string(j) + " --k " +
                                  std::to_string(k));
      REQUIRE(r.exit_code == 0);
      const std::string line = r.out.substr(0, r.out.find('\n'));
      const CPolynomial reparsed = parse_expression(line);
      const CPolynomial expected = phi_jk(j, k);
      CHECK(coeff_distance(reparsed, expected) <=
            1e-12 * (1.0 + expected.max_abs_coeff()));
    }

  CHECK(run_cli("basis --j -1 --k 0").exit_code == 3);
  CHECK(run_cli("basis").exit_code == 3);
}

TEST_CASE("kernel subcommand evaluates single layers and layer sums") {
  const RunResult r = run_cli("kernel --j 1 --zeta 0.5,0.5 --z 0");
  CHECK(r.exit_code == 0);
  const nlohmann::json v = nlohmann::json::parse(r.out);
  CHECK(std::abs(v[0].get<double>() - (1.0 - 0.5 * kPi)) <= 1e-12);
  CHECK(std::abs(v[1].get<double>()) <= 1e-12);

  const RunResult rp = run_cli("kernel --j 1 --zeta 0.5,0.5 --z 0 --poly");
  CHECK(rp.exit_code == 0);
  const nlohmann::json vp = nlohmann::json::parse(rp.out);
  CHECK(std::abs(vp[0].get<double>() - (2.0 - 0.5 * kPi)) <= 1e-12);

  CHECK(run_cli("kernel --j 0 --zeta 0.5,0.5 --z 1,bogus").exit_code == 3);
}

TEST_CASE("coburn subcommand reports, rejects, and dumps matrices") {
  const RunResult ident =
      run_cli("coburn --psi \"phi(1,1)\" --theta \"phi(1,1)\" --j 1 --k 1 --sigma \"z+zbar\"");
  CHECK(ident.exit_code == 0);
  const nlohmann::json jident = nlohmann::json::parse(ident.out);
  CHECK(jident["pass"].get<bool>());
  CHECK(jident["details"]["quotient"].get<std::string>() == "1");
  CHECK(jident["details"]["degree"].get<double>() == 0.0);

  const RunResult quad =
      run_cli("coburn --psi \"phi(0,1)\" --theta \"phi(0,1)\" --j 0 --k 0 --sigma \"z*zbar\"");
  CHECK(quad.exit_code == 0);
  const nlohmann::json jquad = nlohmann::json::parse(quad.out);
  CHECK(jquad["pass"].get<bool>());
  const std::string quot = jquad["details"]["quotient"].get<std::string>();
  CHECK(quot.find("pi*z*zbar") != std::string::npos);
  CHECK(jquad["details"]["degree"].get<double>() == 2.0);
  // The printed quotient re-parses to the same polynomial.
  const CPolynomial qpoly = parse_expression(quot);
  CHECK(qpoly.degree() == 2);

  const RunResult reject =
      run_cli("coburn --psi \"phi(0,1)\" --theta \"phi(1,1)\" --j 1 --k 0 --sigma \"1\"");
  CHECK(reject.exit_code == 2);
  const nlohmann::json jreject = nlohmann::json::parse(reject.out);
  CHECK_FALSE(jreject["pass"].get<bool>());
  CHECK(jreject["details"]["status"].get<std::string>() == "NotDivisible");

  // Byte determinism across identical invocations.
  const RunResult again =
      run_cli("coburn --psi \"phi(0,1)\" --theta \"phi(0,1)\" --j 0 --k 0 --sigma \"z*zbar\"");
  CHECK(again.out == quad.out);

  const RunResult csv = run_cli(
      "coburn --psi \"phi(1,1)\" --theta \"phi(1,1)\" --j 1 --k 1 --sigma \"z+zbar\" "
      "--format csv --truncation 3");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.rfind("row,col,re,im\n", 0) == 0);
  // n = 1, K = 3: the flattened matrix has ((1+1)*(3+1))^2 entries.
  CHECK(count_lines(csv.out) == 1 + 64);

  CHECK(run_cli("coburn --psi \"z+%\" --theta \"1\" --j 0 --k 0 --sigma \"1\"").exit_code ==
        3);
}

TEST_CASE("verify-suite subcommand honors truncation and quadrature budgets") {
  const RunResult full = run_cli("verify-suite");
  CHECK(full.exit_code == 0);
  const nlohmann::json arr = nlohmann::json::parse(full.out);
  REQUIRE(arr.is_array());
  REQUIRE(arr.size() == 11);
  for (const auto& rep : arr) {
    CHECK(rep["pass"].get<bool>());
    CHECK(rep.contains("identity"));
    CHECK(rep.contains("max_abs_error"));
    CHECK(rep.contains("tolerance"));
    CHECK(rep.contains("details"));
  }

  const RunResult low = run_cli("verify-suite --truncation 2");
  CHECK(low.exit_code == 0);

  const RunResult coarse = run_cli("verify-suite --quad-order 4");
  CHECK(coarse.exit_code == 1);
  CHECK(coarse.out.find("exceeds configured budget") != std::string::npos);
  const nlohmann::json jcoarse = nlohmann::json::parse(coarse.out);
  int failing = 0;
  for (const auto& rep : jcoarse)
    if (!rep["pass"].get<bool>()) ++failing;
  CHECK(failing >= 2);
}

TEST_CASE("norms subcommand prints values and flags divergent weights") {
  const RunResult zero = run_cli("norms --sigma \"0\" --a 1 --alpha 1 --p inf");
  CHECK(zero.exit_code == 0);
  CHECK(zero.out == "0\n");

  const RunResult diverge = run_cli("norms --sigma \"1\" --a 1 --alpha 0.5 --p inf");
  CHECK(diverge.exit_code == 3);

  const RunResult finite =
      run_cli("norms --sigma \"phi(1,1)\" --a 0.5 --alpha 1 --p inf --n 1");
  CHECK(finite.exit_code == 0);
  CHECK(std::stod(finite.out) > 0.0);
  const RunResult finite2 =
      run_cli("norms --sigma \"phi(1,1)\" --a 0.5 --alpha 1 --p inf --n 1");
  CHECK(finite2.out == finite.out);
}

TEST_CASE("out flag writes the payload to a file") {
  const std::string path = "/tmp/polyfock_cli_out_test.txt";
  std::remove(path.c_str());
  const RunResult r = run_cli("basis --j 1 --k 1 --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == "-pi*z*zbar + 1\n");
  std::remove(path.c_str());
}
