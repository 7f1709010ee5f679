// Command-line front end: expression parsing, basis/kernel evaluation, the
// window-pair factorization check, the verification suite, and weighted
// quasi-norms. Exit codes: 0 success, 1 verification failure, 2 indivisible
// window pair, 3 parse/config error.
#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include "polyfock/cpoly.hpp"
#include "polyfock/errors.hpp"
#include "polyfock/expr.hpp"
#include "polyfock/fockbasis.hpp"
#include "polyfock/kernels.hpp"
#include "polyfock/quantize.hpp"
#include "polyfock/report.hpp"
#include "polyfock/verify.hpp"

using namespace polyfock;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitNotDivisible = 2;
constexpr int kExitConfig = 3;

// "a,b" or a bare real; anything else is a config error.
Complex parse_point(const std::string& text) {
  const auto parse_real = [](const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw Error("malformed number '" + s + "'");
    return v;
  };
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) return Complex(parse_real(text), 0.0);
  return Complex(parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1)));
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(payload.c_str(), stdout);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    f << payload;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polyanalytic Fock space and localization-operator toolkit"};
  app.require_subcommand(1);

  int basis_j = 0, basis_k = 0;
  std::string basis_eval, basis_out;
  CLI::App* basis = app.add_subcommand("basis", "print an orthonormal basis polynomial");
  basis->add_option("--j", basis_j, "analyticity offset")->required()
      ->check(CLI::NonNegativeNumber);
  basis->add_option("--k", basis_k, "holomorphic index")->required()
      ->check(CLI::NonNegativeNumber);
  basis->add_option("--eval", basis_eval, "evaluation point 're' or 're,im'");
  basis->add_option("--out", basis_out, "write output to FILE");

  int kernel_j = 0;
  bool kernel_sum = false;
  std::string kernel_zeta, kernel_z, kernel_out;
  CLI::App* kern = app.add_subcommand("kernel", "evaluate a reproducing kernel");
  kern->add_option("--j", kernel_j, "layer order (or n with --poly)")->required()
      ->check(CLI::NonNegativeNumber);
  kern->add_option("--zeta", kernel_zeta, "first argument 're' or 're,im'")->required();
  kern->add_option("--z", kernel_z, "second argument 're' or 're,im'")->required();
  kern->add_flag("--poly", kernel_sum, "sum the layers 0..j instead of a single layer");
  kern->add_option("--out", kernel_out, "write output to FILE");

  std::string cb_psi, cb_theta, cb_sigma, cb_format = "json", cb_out;
  int cb_j = 0, cb_k = 0, cb_trunc = 6, cb_quad = 64;
  double cb_tol = 1e-6;
  CLI::App* coburn = app.add_subcommand("coburn", "window-pair factorization check");
  coburn->add_option("--psi", cb_psi, "analysis window expression")->required();
  coburn->add_option("--theta", cb_theta, "synthesis window expression")->required();
  coburn->add_option("--j", cb_j, "synthesis layer")->required()->check(CLI::NonNegativeNumber);
  coburn->add_option("--k", cb_k, "analysis layer")->required()->check(CLI::NonNegativeNumber);
  coburn->add_option("--sigma", cb_sigma, "symbol expression")->required();
  coburn->add_option("--truncation", cb_trunc, "matrix truncation K (default 6)")
      ->check(CLI::PositiveNumber);
  coburn->add_option("--quad-order", cb_quad, "quadrature budget (default 64)")
      ->check(CLI::PositiveNumber);
  coburn->add_option("--tol", cb_tol, "comparison tolerance (default 1e-6)");
  coburn->add_option("--format", cb_format, "json report or csv matrix dump")
      ->check(CLI::IsMember({"json", "csv"}));
  coburn->add_option("--out", cb_out, "write output to FILE");

  int suite_quad = 64, suite_trunc = 5;
  std::string suite_out;
  CLI::App* suite = app.add_subcommand("verify-suite", "run the full verification suite");
  suite->add_option("--quad-order", suite_quad, "quadrature budget (default 64)")
      ->check(CLI::PositiveNumber);
  suite->add_option("--truncation", suite_trunc, "matrix truncation K (default 5)")
      ->check(CLI::PositiveNumber);
  suite->add_option("--out", suite_out, "write output to FILE");

  std::string norm_sigma, norm_p = "inf", norm_out;
  double norm_a = 1.0, norm_alpha = 1.0;
  int norm_n = 2, norm_quad = 64;
  CLI::App* norms = app.add_subcommand("norms", "weighted layerwise quasi-norm");
  norms->add_option("--sigma", norm_sigma, "symbol expression")->required();
  norms->add_option("--a", norm_a, "weight amplitude")->required();
  norms->add_option("--alpha", norm_alpha, "weight exponent parameter")->required();
  norms->add_option("--p", norm_p, "Lebesgue exponent: 1 or inf")
      ->check(CLI::IsMember({"1", "inf"}));
  norms->add_option("--n", norm_n, "polyanalytic order (default 2)")
      ->check(CLI::NonNegativeNumber);
  norms->add_option("--quad-order", norm_quad, "quadrature budget (default 64)")
      ->check(CLI::PositiveNumber);
  norms->add_option("--out", norm_out, "write output to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (basis->parsed()) {
      const CPolynomial p = phi_jk(basis_j, basis_k);
      std::string payload = to_expression(p) + "\n";
      if (!basis_eval.empty())
        payload += format_complex_pair(p.evaluate(parse_point(basis_eval))) + "\n";
      emit(payload, basis_out);
      return kExitPass;
    }

    if (kern->parsed()) {
      const Complex zeta = parse_point(kernel_zeta);
      const Complex z = parse_point(kernel_z);
      const Complex v =
          kernel_sum ? poly_kernel(kernel_j, zeta, z) : kernel(kernel_j, zeta, z);
      emit(format_complex_pair(v) + "\n", kernel_out);
      return kExitPass;
    }

    if (coburn->parsed()) {
      const CPolynomial Psi = parse_expression(cb_psi);
      const CPolynomial Theta = parse_expression(cb_theta);
      const CPolynomial sigma = parse_expression(cb_sigma);
      try {
        Report rep = coburn_verify(Psi, Theta, cb_j, cb_k, sigma, cb_trunc, cb_tol, cb_quad);
        const CoburnResult res = coburn_operator(Psi, Theta, cb_j, cb_k);
        rep.detail_number("degree", static_cast<double>(res.quotient->degree()));
        if (cb_format == "csv") {
          const OperatorMatrix L = berezin_toeplitz_matrix(
              Psi, Theta, SymbolSpec::polynomial(sigma), std::max(cb_j, cb_k), cb_trunc,
              cb_quad);
          emit(matrix_to_csv(L), cb_out);
        } else {
          emit(rep.to_json() + "\n", cb_out);
        }
        return rep.pass ? kExitPass : kExitFail;
      } catch (const NotDivisible& e) {
        Report rep;
        rep.identity = "coburn-block";
        rep.tolerance = cb_tol;
        rep.finalize();
        rep.pass = false;
        rep.detail_string("status", "NotDivisible");
        rep.detail_string("error", e.what());
        emit(rep.to_json() + "\n", cb_out);
        return kExitNotDivisible;
      }
    }

    if (suite->parsed()) {
      SuiteConfig cfg;
      cfg.quad_order = suite_quad;
      cfg.truncation = suite_trunc;
      const std::vector<Report> reports = verify_suite(cfg);
      emit(reports_to_json(reports) + "\n", suite_out);
      const bool all = std::all_of(reports.begin(), reports.end(),
                                   [](const Report& r) { return r.pass; });
      return all ? kExitPass : kExitFail;
    }

    if (norms->parsed()) {
      const CPolynomial sigma = parse_expression(norm_sigma);
      const LpChoice p = norm_p == "1" ? LpChoice::one : LpChoice::infinity;
      const double v =
          quasi_norm(SymbolSpec::polynomial(sigma), norm_a, norm_alpha, p, norm_n, norm_quad);
      emit(format_real(v) + "\n", norm_out);
      return kExitPass;
    }
  } catch (const ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitConfig;
  } catch (const DivergentWeight& e) {
    std::fprintf(stderr, "DivergentWeight: %s\n", e.what());
    return kExitConfig;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFail;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
