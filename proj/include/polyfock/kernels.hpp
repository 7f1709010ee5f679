#pragma once

#include "polyfock/cpoly.hpp"
#include "polyfock/moments.hpp"

namespace polyfock {

// A Gaussian-shifted polynomial
//   value(zeta) = exp(pi conj(center) zeta - (pi/2)|center|^2) * poly(zeta),
// the closure of polynomial windows under Weyl shifts. `poly` is stored in
// the ambient variable (already recentered), so evaluation is direct.
struct CoherentPoly {
  Complex center{0.0, 0.0};
  CPolynomial poly;

  Complex evaluate(Complex zeta) const;
};

// W_z acting on a polynomial window: (W_z psi)(zeta) =
// exp(pi conj(z) zeta - (pi/2)|z|^2) psi(zeta - z, conj(zeta - z)).
CoherentPoly weyl_apply(Complex z, const CPolynomial& psi);

// W_z acting on an already shifted window; centers compose additively and the
// symplectic phase exp(-i pi Im(conj(center) z)) lands in the polynomial part.
CoherentPoly weyl_apply(Complex z, const CoherentPoly& cp);

// Unit-norm coherent state of analyticity offset j at zeta: W_zeta phi_{j,j}.
CoherentPoly coherent_state(int j, Complex zeta);

// Unnormalized kernel K^j_zeta (norm exp(pi |zeta|^2 / 2)).
CoherentPoly kernel_state(int j, Complex zeta);

// Kernel value K^j(zeta, z) = exp(pi conj(z) zeta) phi_{j,j}(zeta - z).
Complex kernel(int j, Complex zeta, Complex z);

// Kernel of the order-n true-polyanalytic sum: sum_{j <= n} kernel(j, ., .).
Complex poly_kernel(int n, Complex zeta, Complex z);

// Exact L^2(dmu) norm of a shifted window (Weyl shifts are unitary, so this
// is the norm of the underlying polynomial).
double coherent_norm(const CoherentPoly& cp);

// <F, K^j_z>: evaluates the degree-j component of F at z when F lies in the
// order-j subspace. Throws NotInSubspace when F has foreign components and
// Error when |z| > kEvalRadiusCap.
Complex reproduce(int j, const CPolynomial& F, Complex z);

inline constexpr double kEvalRadiusCap = 6.0;

// Exact int Q(zeta) exp(pi w conj(zeta)) dmu(zeta); the exponential sum
// collapses to finitely many diagonal moments.
Complex gaussian_pairing(const CPolynomial& Q, Complex w);

}  // namespace polyfock
