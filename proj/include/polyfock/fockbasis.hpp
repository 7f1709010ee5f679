#pragma once

#include "polyfock/cpoly.hpp"

namespace polyfock {

inline constexpr int kHermiteOrderCap = 60;

// Normalized Hermite function h_j(t) (unit L^2 norm, Gaussian weight built
// in), evaluated by the stable three-term recurrence. Throws OrderTooLarge
// for j > kHermiteOrderCap.
double hermite(int j, double t);

// Normalized holomorphic monomial basis: (pi^k / k!)^{1/2} z^k.
CPolynomial phi_k(int k);

// Orthonormal polyanalytic basis element of analyticity offset j and
// holomorphic index k (closed-form binomial sum).
CPolynomial phi_jk(int j, int k);

enum class Ladder { raise_k, raise_j, lower_k, lower_j };

// Index-shift operators:
//   raise_k: sqrt(pi) z    - pi^{-1/2} d/dzbar   ->  sqrt(k+1)  phi_{j,k+1}
//   raise_j: sqrt(pi) zbar - pi^{-1/2} d/dz      -> -sqrt(j+1)  phi_{j+1,k}
//   lower_k: pi^{-1/2} d/dz                      ->  sqrt(k)    phi_{j,k-1}
//   lower_j: pi^{-1/2} d/dzbar                   -> -sqrt(j)    phi_{j-1,k}
DiffOp ladder(Ladder which);

enum class Generator { Z, Zdag, Zbar, Zbardag };

// Annihilation/creation pairs ([Z, Zdag] = [Zbar, Zbardag] = identity; the
// daggered forms are the Gaussian-measure adjoints).
DiffOp generator(Generator which);

// Zbardag Zbar = zbar d/dzbar - (1/(4 pi)) laplacian; phi_{j,k} is an
// eigenvector with eigenvalue j.
DiffOp magnetic_laplacian();

}  // namespace polyfock
