#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "polyfock/cpoly.hpp"
#include "polyfock/kernels.hpp"
#include "polyfock/moments.hpp"
#include "polyfock/report.hpp"

namespace polyfock {

// Quantization symbol: either an exact polynomial in (z, zbar) or a sampled
// evaluator with a declared sup bound (checked on every quadrature grid).
struct SymbolSpec {
  CPolynomial poly;
  std::function<Complex(Complex)> sampled;
  double bound = std::numeric_limits<double>::infinity();

  bool is_polynomial() const { return !sampled; }

  static SymbolSpec polynomial(CPolynomial p) {
    SymbolSpec s;
    s.poly = std::move(p);
    return s;
  }
  static SymbolSpec from_samples(std::function<Complex(Complex)> f, double sup_bound) {
    SymbolSpec s;
    s.sampled = std::move(f);
    s.bound = sup_bound;
    return s;
  }

  Complex eval(Complex z) const { return sampled ? sampled(z) : poly.evaluate(z); }
};

// Truncated operator on the polyanalytic basis grid: row (j,k), column
// (j',k'), entry <Op phi_{j',k'}, phi_{j,k}>, flattened as j*(K+1)+k.
struct OperatorMatrix {
  int n = 0;
  int K = 0;
  Eigen::MatrixXcd mat;

  int dim() const { return (n + 1) * (K + 1); }
  int index(int j, int k) const { return j * (K + 1) + k; }

  static OperatorMatrix zero(int n, int K) {
    OperatorMatrix m;
    m.n = n;
    m.K = K;
    m.mat = Eigen::MatrixXcd::Zero((n + 1) * (K + 1), (n + 1) * (K + 1));
    return m;
  }
};

double spectral_norm(const OperatorMatrix& m);
double hermiticity_defect(const OperatorMatrix& m);
std::string matrix_to_json(const OperatorMatrix& m);
std::string matrix_to_csv(const OperatorMatrix& m);

// The default quadrature budget: exactness-driven grids may not exceed it,
// sampled-symbol grids run at exactly this order.
inline constexpr int kDefaultQuadOrder = 64;

// Q with <F, W_z Psi>_{dmu} = exp(-(pi/2)|z|^2) Q(z, zbar), by symbolic
// moment contraction. Exact; the workhorse behind every localization entry.
CPolynomial cross_symbol(const CPolynomial& F, const CPolynomial& Psi);

// Exact <f, g>_{dmu} of two shifted windows via the Weyl composition law and
// cross_symbol.
Complex coherent_inner_product(const CoherentPoly& f, const CoherentPoly& g);

// Basis expansion coefficients of a shifted window over phi_{j,k}, j <= n,
// k <= K. tail_norm2 (optional) receives ||state||^2 minus the captured mass.
Eigen::VectorXcd coherent_coefficients(const CoherentPoly& state, int n, int K,
                                       double* tail_norm2 = nullptr);

// Truncation of Toep^j_sigma = P^j M_sigma: rows with first index != j are
// zero; entries exact for polynomial sigma, quadrature at `quad_order` for
// sampled sigma (UnboundedSymbol if the declared bound fails on the grid).
OperatorMatrix toeplitz_matrix(int j, const SymbolSpec& sigma, int n, int K,
                               int quad_order = kDefaultQuadOrder);

// Truncation of the two-window localization operator L_sigma^{Psi,Theta};
// entries through cross_symbol pairs and one shared 2D grid (exact order for
// polynomial sigma, subject to the quad_order budget).
OperatorMatrix berezin_toeplitz_matrix(const CPolynomial& Psi, const CPolynomial& Theta,
                                       const SymbolSpec& sigma, int n, int K,
                                       int quad_order = kDefaultQuadOrder);

// <Op K^k_zeta, K^j_zeta> with unit coherent states; matrix form expands the
// states over the truncated basis (TruncationWarning when the neglected tail
// exceeds 1e-8 in norm).
Complex berezin_symbol(const OperatorMatrix& op, Complex zeta, int j, int k);

// Closure form for untruncated operators acting on shifted windows.
Complex berezin_symbol(const std::function<CoherentPoly(const CoherentPoly&)>& op, Complex zeta,
                       int j, int k);

// <Op ket, bra> for arbitrary shifted-window states against a truncated
// matrix (generalized Berezin pairing; used for translation covariance).
Complex berezin_pairing(const OperatorMatrix& op, const CoherentPoly& bra,
                        const CoherentPoly& ket);

// int sigma(zeta - w) conj(Psi(w)) Theta(w) exp(-pi |w|^2) d2w.
Complex berezin_convolution(const SymbolSpec& sigma, const CPolynomial& Psi,
                            const CPolynomial& Theta, Complex zeta,
                            int quad_order = kDefaultQuadOrder);

// Checks (D sigma) * (conj(Psi) Theta e^{-pi|.|^2}) == sigma * D(conj(Psi)
// Theta e^{-pi|.|^2}) at the sampled zeta; D must be constant-coefficient
// (no multiplication parts), as produced by the substitution dictionaries.
Report convolution_commute_check(const CPolynomial& sigma, const CPolynomial& Psi,
                                 const CPolynomial& Theta, const DiffOp& D,
                                 const std::vector<Complex>& zeta_samples, double tol = 1e-8,
                                 int quad_order = kDefaultQuadOrder);

struct CoburnResult {
  CPolynomial numerator;    // forward heat flow of Psi conj(Theta)
  CPolynomial denominator;  // forward heat flow of phi_{k,k} phi_{j,j}
  std::optional<CPolynomial> quotient;
  std::optional<DiffOp> op;
};

// Quotient-symbol dictionary used for the operators below: c z^a zbar^b ->
// c (-1/pi)^{a+b} d/dz^a d/dzbar^b. The scaling differs from anti_wick's
// pi^{-(a+b)/2}; it is the one under which the localization/Toeplitz matrix
// identity verifies to machine precision (the verification suite pins it).
DiffOp coburn_substitution(const CPolynomial& quotient);

// The window-pair reduction: heat flows, exact division, substitution. A
// missing quotient is reported through the empty optionals (callers that
// need the operator throw NotDivisible).
CoburnResult coburn_operator(const CPolynomial& Psi, const CPolynomial& Theta, int j, int k);

// End-to-end single-block verification: berezin_toeplitz_matrix(Psi, Theta,
// sigma) against toeplitz_matrix(j, D sigma), compared on columns with first
// index k. Throws WindowSubspaceViolation / NotDivisible.
Report coburn_verify(const CPolynomial& Psi, const CPolynomial& Theta, int j, int k,
                     const CPolynomial& sigma, int K, double tol,
                     int quad_order = kDefaultQuadOrder);

// Direct-sum version for windows spread over orders 0..n: every defined
// block P^j M_{D_{j,k} sigma} restricted to order-k columns is assembled and
// the full truncated matrices are compared. D_j = sum_k D_{j,k} is reported
// with the degree formula asserted.
Report coburn_sum(const CPolynomial& Psi, const CPolynomial& Theta, const CPolynomial& sigma,
                  int n, int K, double tol, int quad_order = kDefaultQuadOrder);

// F^j-component of a polynomial, exact (moment contraction).
CPolynomial projection(int j, const CPolynomial& sigma);

enum class LpChoice { one, infinity };

// Weighted Gel'fand-Shilov-type functional: sum_j of the L^p norm of
// exp(a|.|^{1/alpha}) exp(-(pi/2)|.|^2) P^j sigma over |z| <= 6. Polynomial
// sigma only. Throws DivergentWeight at the critical rate (see impl).
double quasi_norm(const SymbolSpec& sigma, double a, double alpha, LpChoice p, int n,
                  int quad_order = kDefaultQuadOrder);

}  // namespace polyfock
