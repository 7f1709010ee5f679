#include "polyfock/quantize.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <utility>

#include "polyfock/errors.hpp"
#include "polyfock/expr.hpp"
#include "polyfock/fockbasis.hpp"

namespace polyfock {

double spectral_norm(const OperatorMatrix& m) {
  if (m.mat.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.mat);
  return svd.singularValues()(0);
}

double hermiticity_defect(const OperatorMatrix& m) {
  if (m.mat.size() == 0) return 0.0;
  return (m.mat - m.mat.adjoint()).cwiseAbs().maxCoeff();
}

std::string matrix_to_json(const OperatorMatrix& m) {
  std::string out = "{\"n\": " + std::to_string(m.n) + ", \"K\": " + std::to_string(m.K);
  out += ", \"entries\": [";
  const int dim = m.dim();
  bool first = true;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      if (!first) out += ", ";
      first = false;
      out += format_complex_pair(m.mat(r, c));
    }
  out += "]}";
  return out;
}

std::string matrix_to_csv(const OperatorMatrix& m) {
  std::string out = "row,col,re,im\n";
  const int dim = m.dim();
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      out += std::to_string(r) + "," + std::to_string(c) + ",";
      out += format_real(m.mat(r, c).real()) + "," + format_real(m.mat(r, c).imag()) + "\n";
    }
  return out;
}

// <F, W_z Psi> = e^{-(pi/2)|z|^2} Q(z, zbar). Expanding conj((W_z Psi)(zeta))
// = e^{pi z conj(zeta) - (pi/2)|z|^2} G(zeta - z) with G = conjugate(Psi),
// shifting G binomially and unrolling the exponential against the diagonal
// moments leaves the finite sum below.
CPolynomial cross_symbol(const CPolynomial& F, const CPolynomial& Psi) {
  const CPolynomial G = conjugate(Psi);
  CPolynomial Q;
  for (const auto& [fe, fc] : F.terms()) {
    for (const auto& [ge, gc] : G.terms()) {
      for (int cp = 0; cp <= ge.a; ++cp) {
        for (int dp = 0; dp <= ge.b; ++dp) {
          const int m = fe.a + cp - fe.b - dp;
          if (m < 0) continue;
          const double scale = binomial(ge.a, cp) * binomial(ge.b, dp) *
                               parity(ge.a - cp + ge.b - dp) * std::pow(kPi, m) / factorial(m) *
                               factorial(fe.a + cp) / std::pow(kPi, fe.a + cp);
          Q.add_term(ge.a - cp + m, ge.b - dp, fc * gc * scale);
        }
      }
    }
  }
  return Q;
}

Complex coherent_inner_product(const CoherentPoly& f, const CoherentPoly& g) {
  const CPolynomial f0 = translate_arg(f.poly, -f.center);
  const CPolynomial g0 = translate_arg(g.poly, -g.center);
  const Complex u = f.center - g.center;
  // <W_a f0, W_b g0> = e^{i pi Im(conj(a) b)} <W_{a-b} f0, g0>.
  const Complex phase =
      std::exp(Complex(0.0, kPi * std::imag(std::conj(f.center) * g.center)));
  const CPolynomial Q = cross_symbol(g0, f0);
  return phase * std::conj(std::exp(-0.5 * kPi * std::norm(u)) * Q.evaluate(u));
}

Eigen::VectorXcd coherent_coefficients(const CoherentPoly& state, int n, int K,
                                       double* tail_norm2) {
  const CPolynomial base = translate_arg(state.poly, -state.center);
  const double damp = std::exp(-0.5 * kPi * std::norm(state.center));
  Eigen::VectorXcd c((n + 1) * (K + 1));
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= K; ++k) {
      const CPolynomial Q = cross_symbol(phi_jk(j, k), base);
      c[j * (K + 1) + k] = std::conj(damp * Q.evaluate(state.center));
    }
  if (tail_norm2) {
    // Cancellation-free tail estimate: sample the mass on the first neglected
    // rows and columns directly. Coefficient mass decays factorially along k,
    // so the probe ring dominates whatever lies beyond it; subtracting the
    // captured mass from ||state||^2 instead would drown real tails near
    // 1e-8 in floating-point noise.
    constexpr int kTailProbe = 12;
    const int layer_cap = std::min(n + 2, std::max(0, base.degree()));
    double tail = 0.0;
    for (int j = 0; j <= layer_cap; ++j) {
      const int k_lo = j <= n ? K + 1 : 0;
      for (int k = k_lo; k <= K + kTailProbe; ++k) {
        const CPolynomial Q = cross_symbol(phi_jk(j, k), base);
        tail += std::norm(damp * Q.evaluate(state.center));
      }
    }
    *tail_norm2 = tail;
  }
  return c;
}

namespace {

// Per-node sigma * weight values plus the shared bound check.
Eigen::VectorXcd weighted_symbol_values(const SymbolSpec& sigma, const GaussGrid& grid) {
  const auto& u = grid.axis.nodes;
  const auto& w = grid.axis.weights;
  const int nn = grid.order();
  Eigen::VectorXcd sw(nn * nn);
  int idx = 0;
  for (int ix = 0; ix < nn; ++ix)
    for (int iy = 0; iy < nn; ++iy, ++idx) {
      const Complex z(u[ix], u[iy]);
      const Complex sv = sigma.eval(z);
      if (!(std::abs(sv) <= sigma.bound * (1.0 + 1e-12)))
        throw UnboundedSymbol("sampled symbol exceeds its declared bound " +
                              format_real(sigma.bound) + " at z = " + format_complex_pair(z));
      sw[idx] = w[ix] * w[iy] * sv;
    }
  return sw;
}

void check_indices(int n, int K) {
  if (n < 0 || K < 0) throw Error("operator truncation needs n >= 0 and K >= 0");
}

}  // namespace

OperatorMatrix toeplitz_matrix(int j, const SymbolSpec& sigma, int n, int K, int quad_order) {
  check_indices(n, K);
  if (j < 0 || j > n) throw Error("toeplitz_matrix: projection order must satisfy 0 <= j <= n");
  OperatorMatrix M = OperatorMatrix::zero(n, K);
  if (sigma.is_polynomial()) {
    for (int kr = 0; kr <= K; ++kr) {
      const CPolynomial row_factor = sigma.poly * conjugate(phi_jk(j, kr));
      for (int jc = 0; jc <= n; ++jc)
        for (int kc = 0; kc <= K; ++kc)
          M.mat(M.index(j, kr), M.index(jc, kc)) =
              integrate_poly_dmu(row_factor * phi_jk(jc, kc));
    }
    return M;
  }
  const GaussGrid grid = gh_grid_2d(quad_order);
  const Eigen::VectorXcd sw = weighted_symbol_values(sigma, grid);
  const int dim = M.dim();
  const int nn = grid.order();
  Eigen::MatrixXcd B(nn * nn, dim);
  for (int jc = 0; jc <= n; ++jc)
    for (int kc = 0; kc <= K; ++kc) {
      const CPolynomial phi = phi_jk(jc, kc);
      int idx = 0;
      for (int ix = 0; ix < nn; ++ix)
        for (int iy = 0; iy < nn; ++iy, ++idx)
          B(idx, M.index(jc, kc)) = phi.evaluate(Complex(grid.axis.nodes[ix], grid.axis.nodes[iy]));
    }
  const Eigen::MatrixXcd full = B.adjoint() * sw.asDiagonal() * B;
  for (int kr = 0; kr <= K; ++kr)
    M.mat.row(M.index(j, kr)) = full.row(M.index(j, kr));
  return M;
}

OperatorMatrix berezin_toeplitz_matrix(const CPolynomial& Psi, const CPolynomial& Theta,
                                       const SymbolSpec& sigma, int n, int K, int quad_order) {
  check_indices(n, K);
  OperatorMatrix M = OperatorMatrix::zero(n, K);
  const int dim = M.dim();
  std::vector<CPolynomial> qcol(dim), qrow(dim);
  int deg_col = 0, deg_row = 0;
  for (int j = 0; j <= n; ++j)
    for (int k = 0; k <= K; ++k) {
      const int idx = M.index(j, k);
      qcol[idx] = cross_symbol(phi_jk(j, k), Psi);
      qrow[idx] = cross_symbol(phi_jk(j, k), Theta);
      deg_col = std::max(deg_col, qcol[idx].degree());
      deg_row = std::max(deg_row, qrow[idx].degree());
    }
  int order = quad_order;
  if (sigma.is_polynomial()) {
    const int total = std::max(0, sigma.poly.degree()) + deg_col + deg_row;
    order = capped_order(grid_order_for_degree(total), quad_order);
  }
  const GaussGrid grid = gh_grid_2d(order);
  const Eigen::VectorXcd sw = weighted_symbol_values(sigma, grid);
  const int nn = grid.order();
  Eigen::MatrixXcd V(nn * nn, dim), W(nn * nn, dim);
  for (int c = 0; c < dim; ++c) {
    int idx = 0;
    for (int ix = 0; ix < nn; ++ix)
      for (int iy = 0; iy < nn; ++iy, ++idx) {
        const Complex z(grid.axis.nodes[ix], grid.axis.nodes[iy]);
        V(idx, c) = qcol[c].evaluate(z);
        W(idx, c) = qrow[c].evaluate(z);
      }
  }
  M.mat = W.adjoint() * sw.asDiagonal() * V;
  return M;
}

Complex berezin_pairing(const OperatorMatrix& op, const CoherentPoly& bra,
                        const CoherentPoly& ket) {
  double tail_bra = 0.0, tail_ket = 0.0;
  const Eigen::VectorXcd cb = coherent_coefficients(bra, op.n, op.K, &tail_bra);
  const Eigen::VectorXcd ck = coherent_coefficients(ket, op.n, op.K, &tail_ket);
  const double tail = std::sqrt(std::max(tail_bra, tail_ket));
  if (tail > 1e-8)
    throw TruncationWarning("state expansion tail " + format_real(tail) +
                            " exceeds 1e-8; raise the truncation (n, K)");
  return (cb.adjoint() * (op.mat * ck))(0, 0);
}

Complex berezin_symbol(const OperatorMatrix& op, Complex zeta, int j, int k) {
  return berezin_pairing(op, coherent_state(j, zeta), coherent_state(k, zeta));
}

Complex berezin_symbol(const std::function<CoherentPoly(const CoherentPoly&)>& op, Complex zeta,
                       int j, int k) {
  return coherent_inner_product(op(coherent_state(k, zeta)), coherent_state(j, zeta));
}

namespace {

// int sigma(zeta - w) g(w) e^{-pi |w|^2} d2w; exact order for polynomial
// sigma (the shift keeps the degree), operating order otherwise.
Complex convolve_gaussian(const SymbolSpec& sigma, const CPolynomial& g, Complex zeta,
                          int quad_order) {
  int order = quad_order;
  if (sigma.is_polynomial()) {
    const int total = std::max(0, sigma.poly.degree()) + std::max(0, g.degree());
    order = capped_order(grid_order_for_degree(total), quad_order);
  }
  const GaussGrid grid = gh_grid_2d(order);
  const auto& u = grid.axis.nodes;
  const auto& w = grid.axis.weights;
  const int nn = grid.order();
  std::vector<Complex> vals;
  vals.reserve(static_cast<std::size_t>(nn) * nn);
  for (int ix = 0; ix < nn; ++ix)
    for (int iy = 0; iy < nn; ++iy) {
      const Complex z(u[ix], u[iy]);
      const Complex sv = sigma.eval(zeta - z);
      if (!(std::abs(sv) <= sigma.bound * (1.0 + 1e-12)))
        throw UnboundedSymbol("sampled symbol exceeds its declared bound " +
                              format_real(sigma.bound) + " at z = " +
                              format_complex_pair(zeta - z));
      vals.push_back(w[ix] * w[iy] * sv * g.evaluate(z));
    }
  return pairwise_sum(std::move(vals));
}

}  // namespace

Complex berezin_convolution(const SymbolSpec& sigma, const CPolynomial& Psi,
                            const CPolynomial& Theta, Complex zeta, int quad_order) {
  return convolve_gaussian(sigma, conjugate(Psi) * Theta, zeta, quad_order);
}

Report convolution_commute_check(const CPolynomial& sigma, const CPolynomial& Psi,
                                 const CPolynomial& Theta, const DiffOp& D,
                                 const std::vector<Complex>& zeta_samples, double tol,
                                 int quad_order) {
  for (const auto& [key, c] : D.terms())
    if (key.a != 0 || key.b != 0)
      throw Error("convolution_commute_check: operator must be constant-coefficient");
  const CPolynomial g = conjugate(Psi) * Theta;
  // Moving D through the Gaussian factor turns d/dz into (d/dz - pi zbar)
  // and d/dzbar into (d/dzbar - pi z) on the polynomial part.
  CPolynomial h;
  for (const auto& [key, c] : D.terms()) {
    CPolynomial cur = g;
    for (int l = 0; l < key.l; ++l)
      cur = differentiate(cur, Var::z) - kPi * (CPolynomial::var_zbar() * cur);
    for (int m = 0; m < key.m; ++m)
      cur = differentiate(cur, Var::zbar) - kPi * (CPolynomial::var_z() * cur);
    h += c * cur;
  }
  const CPolynomial d_sigma = apply_diff(D, sigma);
  Report rep;
  rep.identity = "convolution-commutation";
  rep.tolerance = tol;
  for (const Complex& zeta : zeta_samples) {
    const Complex lhs = convolve_gaussian(SymbolSpec::polynomial(d_sigma), g, zeta, quad_order);
    const Complex rhs = convolve_gaussian(SymbolSpec::polynomial(sigma), h, zeta, quad_order);
    rep.observe(std::abs(lhs - rhs));
  }
  rep.detail_string("operator", to_expression(D));
  rep.detail_string("symbol", to_expression(sigma));
  rep.detail_number("samples", static_cast<double>(zeta_samples.size()));
  rep.finalize();
  return rep;
}

DiffOp coburn_substitution(const CPolynomial& quotient) {
  DiffOp op;
  for (const auto& [e, c] : quotient.terms())
    op.add_term(DiffKey{0, 0, e.a, e.b}, c * parity(e.a + e.b) * std::pow(kPi, -(e.a + e.b)));
  return op;
}

CoburnResult coburn_operator(const CPolynomial& Psi, const CPolynomial& Theta, int j, int k) {
  if (Psi.is_zero() || Theta.is_zero()) throw Error("coburn_operator: windows must be nonzero");
  if (j < 0 || k < 0) throw Error("coburn_operator: orders must be nonnegative");
  CoburnResult res;
  const double t = 1.0 / (4.0 * kPi);
  res.numerator = heat_flow(Psi * conjugate(Theta), t);
  res.denominator = heat_flow(phi_jk(k, k) * phi_jk(j, j), t);
  auto quotient = try_divide(res.numerator, res.denominator);
  if (quotient) {
    const int expected = Psi.degree() + Theta.degree() - 2 * j - 2 * k;
    if (quotient->degree() != expected)
      throw Error("coburn_operator: quotient degree " + std::to_string(quotient->degree()) +
                  " violates the reduction formula (expected " + std::to_string(expected) + ")");
    res.quotient = std::move(*quotient);
    res.op = coburn_substitution(*res.quotient);
  }
  return res;
}

namespace {

// Norm of a residual polynomial with roundoff dust (relative to `scale`)
// removed first, so exact cancellations do not read as tiny components.
double cleaned_norm(const CPolynomial& res, double scale) {
  CPolynomial cleaned;
  const double floor = 1e-13 * (1.0 + scale);
  for (const auto& [e, cf] : res.terms())
    if (std::abs(cf) >= floor) cleaned.add_term(e.a, e.b, cf);
  if (cleaned.is_zero()) return 0.0;
  return std::sqrt(std::max(0.0, std::real(inner_product_exact(cleaned, cleaned))));
}

// Distance from w to span{phi_{order, k'}} through the explicit residual
// polynomial (exact moments; no large-mass cancellation).
double foreign_component_norm(const CPolynomial& w, int order) {
  CPolynomial res = w;
  for (int kp = 0; kp <= std::max(0, w.degree()); ++kp) {
    const CPolynomial phi = phi_jk(order, kp);
    res -= inner_product_exact(w, phi) * phi;
  }
  return cleaned_norm(res, w.max_abs_coeff());
}

double window_norm(const CPolynomial& w) {
  return std::sqrt(std::max(0.0, std::real(inner_product_exact(w, w))));
}

}  // namespace

Report coburn_verify(const CPolynomial& Psi, const CPolynomial& Theta, int j, int k,
                     const CPolynomial& sigma, int K, double tol, int quad_order) {
  if (foreign_component_norm(Psi, k) > 1e-10 * (1.0 + window_norm(Psi)))
    throw WindowSubspaceViolation("coburn_verify: Psi has components outside order " +
                                  std::to_string(k));
  if (foreign_component_norm(Theta, j) > 1e-10 * (1.0 + window_norm(Theta)))
    throw WindowSubspaceViolation("coburn_verify: Theta has components outside order " +
                                  std::to_string(j));
  CoburnResult res = coburn_operator(Psi, Theta, j, k);
  if (!res.quotient)
    throw NotDivisible("heat-flow quotient does not exist: numerator = " +
                       to_expression(res.numerator) + ", denominator = " +
                       to_expression(res.denominator));
  const CPolynomial d_sigma = apply_diff(*res.op, sigma);
  const int n = std::max(j, k);
  const OperatorMatrix L =
      berezin_toeplitz_matrix(Psi, Theta, SymbolSpec::polynomial(sigma), n, K, quad_order);
  const OperatorMatrix T =
      toeplitz_matrix(j, SymbolSpec::polynomial(d_sigma), n, K, quad_order);
  Report rep;
  rep.identity = "localization-toeplitz-block";
  rep.tolerance = tol;
  for (int r = 0; r < L.dim(); ++r)
    for (int kc = 0; kc <= K; ++kc)
      rep.observe(std::abs(L.mat(r, L.index(k, kc)) - T.mat(r, T.index(k, kc))));
  rep.detail_raw("block", "[" + std::to_string(j) + ", " + std::to_string(k) + "]");
  rep.detail_string("quotient", to_expression(*res.quotient));
  rep.detail_string("operator", to_expression(*res.op));
  rep.detail_string("weighted_symbol", to_expression(d_sigma));
  rep.detail_number("truncation", static_cast<double>(K));
  rep.finalize();
  return rep;
}

Report coburn_sum(const CPolynomial& Psi, const CPolynomial& Theta, const CPolynomial& sigma,
                  int n, int K, double tol, int quad_order) {
  check_indices(n, K);
  // Exact layer expansions of both windows.
  std::vector<CPolynomial> psi_part(n + 1), theta_part(n + 1);
  CPolynomial psi_res = Psi, theta_res = Theta;
  for (int j = 0; j <= n; ++j) {
    for (int kp = 0; kp <= std::max(0, Psi.degree()); ++kp) {
      const Complex a = inner_product_exact(Psi, phi_jk(j, kp));
      psi_part[j] += a * phi_jk(j, kp);
    }
    for (int kp = 0; kp <= std::max(0, Theta.degree()); ++kp) {
      const Complex a = inner_product_exact(Theta, phi_jk(j, kp));
      theta_part[j] += a * phi_jk(j, kp);
    }
    psi_part[j] = psi_part[j].pruned();
    theta_part[j] = theta_part[j].pruned();
    psi_res -= psi_part[j];
    theta_res -= theta_part[j];
  }
  const double psi_total = window_norm(Psi), theta_total = window_norm(Theta);
  if (cleaned_norm(psi_res, Psi.max_abs_coeff()) > 1e-10 * (1.0 + psi_total))
    throw WindowSubspaceViolation("coburn_sum: Psi has components outside orders 0.." +
                                  std::to_string(n));
  if (cleaned_norm(theta_res, Theta.max_abs_coeff()) > 1e-10 * (1.0 + theta_total))
    throw WindowSubspaceViolation("coburn_sum: Theta has components outside orders 0.." +
                                  std::to_string(n));

  OperatorMatrix S = OperatorMatrix::zero(n, K);
  std::vector<DiffOp> op_sum(n + 1);
  std::vector<CPolynomial> quot_sum(n + 1);
  std::vector<int> expected_deg(n + 1, -1);
  std::vector<bool> any_block(n + 1, false);
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) {
      if (psi_part[k].is_zero() || theta_part[j].is_zero()) continue;
      CoburnResult res = coburn_operator(psi_part[k], theta_part[j], j, k);
      if (!res.quotient)
        throw NotDivisible("coburn_sum: block (j, k) = (" + std::to_string(j) + ", " +
                           std::to_string(k) + ") has no heat-flow quotient");
      const int block_deg = psi_part[k].degree() + theta_part[j].degree() - 2 * j - 2 * k;
      expected_deg[j] = any_block[j] ? std::max(expected_deg[j], block_deg) : block_deg;
      any_block[j] = true;
      op_sum[j] += *res.op;
      quot_sum[j] += *res.quotient;
      const CPolynomial d_sigma = apply_diff(*res.op, sigma);
      const OperatorMatrix T =
          toeplitz_matrix(j, SymbolSpec::polynomial(d_sigma), n, K, quad_order);
      for (int r = 0; r < S.dim(); ++r)
        for (int kc = 0; kc <= K; ++kc)
          S.mat(r, S.index(k, kc)) += T.mat(r, T.index(k, kc));
    }
  }
  const OperatorMatrix L =
      berezin_toeplitz_matrix(Psi, Theta, SymbolSpec::polynomial(sigma), n, K, quad_order);
  Report rep;
  rep.identity = "localization-toeplitz-sum";
  rep.tolerance = tol;
  rep.observe((L.mat - S.mat).cwiseAbs().maxCoeff());
  rep.finalize();
  for (int j = 0; j <= n; ++j) {
    if (!any_block[j]) continue;
    rep.detail_string("operator_sum_" + std::to_string(j), to_expression(op_sum[j]));
    rep.detail_number("degree_" + std::to_string(j), static_cast<double>(quot_sum[j].degree()));
    if (quot_sum[j].pruned().degree() != expected_deg[j]) {
      rep.pass = false;
      rep.detail_string("degree_check_" + std::to_string(j),
                        "expected " + std::to_string(expected_deg[j]));
    }
  }
  return rep;
}

CPolynomial projection(int j, const CPolynomial& sigma) {
  if (j < 0) throw Error("projection: order must be nonnegative");
  return cross_symbol(sigma, phi_jk(j, j));
}

double quasi_norm(const SymbolSpec& sigma, double a, double alpha, LpChoice p, int n,
                  int quad_order) {
  if (!sigma.is_polynomial()) throw Error("quasi_norm requires a polynomial symbol");
  if (!(a > 0.0)) throw Error("quasi_norm: weight rate a must be positive");
  if (!(alpha >= 0.5 && alpha <= 1.0)) throw Error("quasi_norm: alpha must lie in [1/2, 1]");
  if (n < 0) throw Error("quasi_norm: n must be nonnegative");
  // Divergence guard by exponent comparison: at the critical rate 1/alpha = 2
  // the weight exp(a|z|^{1/alpha}) matches the Gaussian scale and the
  // functional is rejected, as is any rate a beyond the pi/2 margin.
  if (1.0 / alpha >= 2.0 - 1e-12 || a >= 0.5 * kPi - 1e-12)
    throw DivergentWeight("weight exp(" + format_real(a) + "|z|^" + format_real(1.0 / alpha) +
                          ") fails the divergence test against the Gaussian envelope");
  const GaussGrid grid = gh_grid_2d(quad_order);
  const auto& u = grid.axis.nodes;
  const auto& w = grid.axis.weights;
  const int nn = grid.order();
  double total = 0.0;
  for (int j = 0; j <= n; ++j) {
    const CPolynomial pj = projection(j, sigma.poly).pruned();
    if (pj.is_zero()) continue;
    if (p == LpChoice::infinity) {
      double best = 0.0;
      for (int ix = 0; ix < nn; ++ix)
        for (int iy = 0; iy < nn; ++iy) {
          const Complex z(u[ix], u[iy]);
          const double r2 = std::norm(z);
          if (r2 > kEvalRadiusCap * kEvalRadiusCap) continue;
          const double weight =
              std::exp(a * std::pow(std::sqrt(r2), 1.0 / alpha) - 0.5 * kPi * r2);
          best = std::max(best, weight * std::abs(pj.evaluate(z)));
        }
      total += best;
    } else {
      std::vector<double> vals;
      for (int ix = 0; ix < nn; ++ix)
        for (int iy = 0; iy < nn; ++iy) {
          const Complex z(u[ix], u[iy]);
          const double r2 = std::norm(z);
          if (r2 > kEvalRadiusCap * kEvalRadiusCap) continue;
          const double lift = std::exp(a * std::pow(std::sqrt(r2), 1.0 / alpha) + 0.5 * kPi * r2);
          vals.push_back(w[ix] * w[iy] * lift * std::abs(pj.evaluate(z)));
        }
      total += pairwise_sum(std::move(vals));
    }
  }
  return total;
}

}  // namespace polyfock
