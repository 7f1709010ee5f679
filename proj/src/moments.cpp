#include "polyfock/moments.hpp"

#include <cmath>
#include <string>

#include "polyfock/errors.hpp"

namespace polyfock {

GaussGrid1D gh_grid_1d(int order, double rate) {
  if (order < 1) throw Error("gh_grid_1d: order must be positive");
  if (order > kGridOrderCap)
    throw GridOrderTooLarge("gh_grid_1d: order " + std::to_string(order) + " exceeds cap " +
                            std::to_string(kGridOrderCap));

  GaussGrid1D g;
  g.order = order;
  g.rate = rate;
  if (order == 1) {
    g.nodes = Eigen::VectorXd::Zero(1);
    g.weights = Eigen::VectorXd::Constant(1, std::sqrt(kPi / rate));
    return g;
  }

  // Golub-Welsch on the Hermite Jacobi matrix (weight exp(-v^2)), then the
  // substitution u = v / sqrt(rate).
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double off = std::sqrt(0.5 * k);
    jac(k - 1, k) = off;
    jac(k, k - 1) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  const double scale = 1.0 / std::sqrt(rate);
  g.nodes = es.eigenvalues() * scale;
  g.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    const double q0 = es.eigenvectors()(0, i);
    g.weights[i] = std::sqrt(kPi) * q0 * q0 * scale;
  }
  return g;
}

GaussGrid gh_grid_2d(int order) { return GaussGrid{gh_grid_1d(order, kPi)}; }

int capped_order(int required, int cap) {
  if (required > cap)
    throw QuadratureOrderInsufficient("quadrature order " + std::to_string(required) +
                                      " required for exactness exceeds configured budget " +
                                      std::to_string(cap));
  return required;
}

double monomial_moment(int a, int b) {
  if (a != b) return 0.0;
  return factorial(a) / std::pow(kPi, a);
}

Complex integrate_poly_dmu(const CPolynomial& p) {
  std::vector<Complex> vals;
  for (const auto& [e, c] : p.terms())
    if (e.a == e.b) vals.push_back(c * monomial_moment(e.a, e.b));
  return pairwise_sum(std::move(vals));
}

Complex inner_product_dmu(const CPolynomial& p, const CPolynomial& q, const GaussGrid& grid) {
  return inner_product_dmu([&](Complex z) { return p.evaluate(z); },
                           [&](Complex z) { return q.evaluate(z); }, grid);
}

Complex inner_product_exact(const CPolynomial& p, const CPolynomial& q) {
  return integrate_poly_dmu(p * conjugate(q));
}

}  // namespace polyfock
