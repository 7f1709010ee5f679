#include "polyfock/fockbasis.hpp"

#include <cmath>
#include <string>

#include "polyfock/errors.hpp"

namespace polyfock {

double hermite(int j, double t) {
  if (j < 0) throw Error("hermite: negative order");
  if (j > kHermiteOrderCap)
    throw OrderTooLarge("hermite: order " + std::to_string(j) + " exceeds cap " +
                        std::to_string(kHermiteOrderCap));
  const double h0 = std::pow(2.0, 0.25) * std::exp(-kPi * t * t);
  if (j == 0) return h0;
  double prev = h0;
  double cur = 2.0 * std::sqrt(kPi) * t * h0;
  for (int n = 1; n < j; ++n) {
    const double next =
        (2.0 * std::sqrt(kPi) * t * cur - std::sqrt(static_cast<double>(n)) * prev) /
        std::sqrt(static_cast<double>(n + 1));
    prev = cur;
    cur = next;
  }
  return cur;
}

CPolynomial phi_k(int k) {
  if (k < 0) throw Error("phi_k: negative index");
  // sqrt(pi^k / k!) via logs to stay finite for large k.
  const double c = std::exp(0.5 * (k * std::log(kPi) - std::lgamma(k + 1.0)));
  return CPolynomial::monomial(k, 0, Complex(c, 0.0));
}

CPolynomial phi_jk(int j, int k) {
  if (j < 0 || k < 0) throw Error("phi_jk: negative index");
  const double norm =
      std::exp(0.5 * ((j + k) * std::log(kPi) - std::lgamma(j + 1.0) - std::lgamma(k + 1.0)));
  CPolynomial p;
  for (int i = 0; i <= std::min(j, k); ++i) {
    const double c =
        parity(j + i) * norm * binomial(j, i) * binomial(k, i) * factorial(i) * std::pow(kPi, -i);
    p.add_term(k - i, j - i, Complex(c, 0.0));
  }
  return p;
}

DiffOp ladder(Ladder which) {
  const double s = std::sqrt(kPi);
  switch (which) {
    case Ladder::raise_k:
      return DiffOp::term(1, 0, 0, 0, s) - DiffOp::term(0, 0, 0, 1, 1.0 / s);
    case Ladder::raise_j:
      return DiffOp::term(0, 1, 0, 0, s) - DiffOp::term(0, 0, 1, 0, 1.0 / s);
    case Ladder::lower_k:
      return DiffOp::term(0, 0, 1, 0, 1.0 / s);
    case Ladder::lower_j:
      return DiffOp::term(0, 0, 0, 1, 1.0 / s);
  }
  throw Error("ladder: unknown selector");
}

DiffOp generator(Generator which) {
  switch (which) {
    case Generator::Z:
      return ladder(Ladder::lower_k);
    case Generator::Zdag:
      return ladder(Ladder::raise_k);
    case Generator::Zbar:
      return ladder(Ladder::lower_j);
    case Generator::Zbardag:
      return ladder(Ladder::raise_j);
  }
  throw Error("generator: unknown selector");
}

DiffOp magnetic_laplacian() {
  return DiffOp::term(0, 1, 0, 1, 1.0) - DiffOp::term(0, 0, 1, 1, 1.0 / kPi);
}

}  // namespace polyfock
