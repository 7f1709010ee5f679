#include "polyfock/kernels.hpp"

#include <cmath>
#include <string>

#include "polyfock/errors.hpp"
#include "polyfock/fockbasis.hpp"

namespace polyfock {

Complex CoherentPoly::evaluate(Complex zeta) const {
  const Complex expo = kPi * std::conj(center) * zeta - 0.5 * kPi * std::norm(center);
  return std::exp(expo) * poly.evaluate(zeta);
}

CoherentPoly weyl_apply(Complex z, const CPolynomial& psi) {
  return CoherentPoly{z, translate_arg(psi, z)};
}

CoherentPoly weyl_apply(Complex z, const CoherentPoly& cp) {
  const double phase = -kPi * std::imag(std::conj(cp.center) * z);
  const Complex factor = std::exp(Complex(0.0, phase));
  return CoherentPoly{cp.center + z, factor * translate_arg(cp.poly, z)};
}

CoherentPoly coherent_state(int j, Complex zeta) { return weyl_apply(zeta, phi_jk(j, j)); }

CoherentPoly kernel_state(int j, Complex zeta) {
  CoherentPoly cp = coherent_state(j, zeta);
  cp.poly *= Complex(std::exp(0.5 * kPi * std::norm(zeta)), 0.0);
  return cp;
}

Complex kernel(int j, Complex zeta, Complex z) {
  const CPolynomial base = phi_jk(j, j);
  return std::exp(kPi * std::conj(z) * zeta) * base.evaluate(zeta - z);
}

Complex poly_kernel(int n, Complex zeta, Complex z) {
  Complex acc(0.0, 0.0);
  for (int j = 0; j <= n; ++j) acc += kernel(j, zeta, z);
  return acc;
}

double coherent_norm(const CoherentPoly& cp) {
  const CPolynomial window = translate_arg(cp.poly, -cp.center);
  const Complex n2 = integrate_poly_dmu(window * conjugate(window));
  return std::sqrt(std::max(0.0, n2.real()));
}

Complex gaussian_pairing(const CPolynomial& Q, Complex w) {
  std::vector<Complex> vals;
  for (const auto& [e, c] : Q.terms()) {
    if (e.a < e.b) continue;
    const int m = e.a - e.b;
    // int zeta^a conj(zeta)^b exp(pi w conj(zeta)) dmu picks the m-th term of
    // the exponential series: (pi w)^m / m! * a! / pi^a.
    vals.push_back(c * std::pow(kPi * w, m) * (factorial(e.a) / factorial(m)) *
                   std::pow(kPi, -e.a));
  }
  return pairwise_sum(std::move(vals));
}

Complex reproduce(int j, const CPolynomial& F, Complex z) {
  if (std::abs(z) > kEvalRadiusCap)
    throw Error("reproduce: evaluation point exceeds |z| <= " + std::to_string(kEvalRadiusCap));

  // F must lie in the order-j subspace: expand over the orthonormal basis up
  // to the total degree of F and measure the foreign mass.
  const int d = F.degree();
  const Complex n2 = integrate_poly_dmu(F * conjugate(F));
  double foreign2 = 0.0;
  for (int jp = 0; jp <= d; ++jp) {
    if (jp == j) continue;
    for (int kp = 0; jp + kp <= d; ++kp) {
      const Complex c = integrate_poly_dmu(F * conjugate(phi_jk(jp, kp)));
      foreign2 += std::norm(c);
    }
  }
  if (std::sqrt(foreign2) > 1e-8 * (1.0 + std::sqrt(std::max(0.0, n2.real()))))
    throw NotInSubspace("reproduce: window has components outside order " + std::to_string(j));

  const CPolynomial P = conjugate(translate_arg(phi_jk(j, j), z));
  return gaussian_pairing(F * P, z);
}

}  // namespace polyfock
