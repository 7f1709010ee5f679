#pragma once

#include <Eigen/Dense>

#include <concepts>

#include "polyfock/cpoly.hpp"
#include "polyfock/numeric.hpp"

namespace polyfock {

inline constexpr int kGridOrderCap = 200;

// Gauss-Hermite rule for int f(u) exp(-rate * u^2) du. Weights carry the
// Gaussian, so sums are plain dot products; sum(weights) = sqrt(pi / rate).
struct GaussGrid1D {
  int order = 0;
  double rate = kPi;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  // Polynomials up to this degree are integrated exactly (2 * order - 1).
  int exact_degree() const { return 2 * order - 1; }
};

// Tensor-product rule over the plane, z = x + i*omega, against exp(-pi |z|^2).
struct GaussGrid {
  GaussGrid1D axis;
  int order() const { return axis.order; }
  int exact_degree() const { return axis.exact_degree(); }
};

// Throws GridOrderTooLarge beyond kGridOrderCap.
GaussGrid1D gh_grid_1d(int order, double rate = kPi);
GaussGrid gh_grid_2d(int order);

// Smallest documented order guaranteed exact for the given total degree.
inline int grid_order_for_degree(int degree) { return degree < 0 ? 1 : degree + 1; }

// Checks a required exactness order against a configured budget; returns the
// required order or throws QuadratureOrderInsufficient.
int capped_order(int required, int cap);

// int z^a zbar^b exp(-pi |z|^2) d2z  =  (a == b) ? a! / pi^a : 0.
double monomial_moment(int a, int b);

// Exact integral of a polynomial against the Gaussian measure.
Complex integrate_poly_dmu(const CPolynomial& p);

// Quadrature sum of an arbitrary integrand against the Gaussian measure,
// accumulated with a deterministic pairwise reduction.
template <class F>
Complex integrate_dmu(F&& f, const GaussGrid& grid) {
  const auto& u = grid.axis.nodes;
  const auto& w = grid.axis.weights;
  const int n = grid.axis.order;
  std::vector<Complex> vals;
  vals.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) vals.push_back(w[i] * w[j] * f(Complex(u[i], u[j])));
  return pairwise_sum(std::move(vals));
}

// <f, g> against the Gaussian measure via quadrature.
template <class F, class G>
  requires std::invocable<F&, Complex> && std::invocable<G&, Complex>
Complex inner_product_dmu(F&& f, G&& g, const GaussGrid& grid) {
  return integrate_dmu([&](Complex z) { return f(z) * std::conj(g(z)); }, grid);
}

Complex inner_product_dmu(const CPolynomial& p, const CPolynomial& q, const GaussGrid& grid);

// Exact <p, q> via the moment table.
Complex inner_product_exact(const CPolynomial& p, const CPolynomial& q);

}  // namespace polyfock
