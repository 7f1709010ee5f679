#pragma once

#include <functional>
#include <vector>

#include "polyfock/cpoly.hpp"
#include "polyfock/quantize.hpp"
#include "polyfock/report.hpp"

namespace polyfock {

// Signal on the real line with Gaussian-dominated decay. `center` marks the
// bulk of the Gaussian envelope so quadratures can recenter their nodes;
// `mode_coeffs`, when non-empty, records the expansion over the normalized
// Hermite modes (kept by the factories below, dropped by translation and
// modulation, and required by the localization bridge).
struct SignalEvaluator {
  std::function<Complex(double)> eval;
  double center = 0.0;
  std::vector<Complex> mode_coeffs;

  Complex operator()(double t) const { return eval(t); }

  static SignalEvaluator hermite_mode(int m);
  static SignalEvaluator hermite_combination(std::vector<Complex> coeffs);

  // t -> f(t - u); the envelope center shifts with the signal.
  SignalEvaluator translated(double u) const;
  // t -> e^{2 pi i eta t} f(t); the envelope is unchanged.
  SignalEvaluator modulated(double eta) const;
};

// <f, g>_{L^2(R)} by recentered Gauss-Hermite quadrature; like every
// quadrature here, computed at order 64 and re-checked at order 128
// (QuadratureOrderInsufficient when the two differ by more than 1e-7).
Complex signal_inner_product(const SignalEvaluator& f, const SignalEvaluator& g);

// V_w f(x, omega) = int f(t) conj(w(t - x)) e^{-2 pi i t omega} dt.
Complex stft(const SignalEvaluator& f, const SignalEvaluator& window, double x, double omega);

// <V_psi f, V_phi g>_{L^2(R^2)} over the phase plane (2D weak-form grid).
Complex stft_pairing(const SignalEvaluator& f, const SignalEvaluator& psi,
                     const SignalEvaluator& g, const SignalEvaluator& phi);

// (Bf)(z) = 2^{1/4} int f(t) e^{2 pi t z - pi t^2 - (pi/2) z^2} dt.
Complex bargmann(const SignalEvaluator& f, Complex z);

// Order-j lift of the plane transform: with z = x + i omega,
//   e^{-i pi x omega} e^{pi (x^2 + omega^2) / 2} (V_{h_j} f)(x, -omega);
// sends the m-th Hermite mode to phi_{j,m}.
Complex true_poly_bargmann(int j, const SignalEvaluator& f, Complex z);

// Superposition sum_j of the order-j lifts of the components; the component
// list must have length n + 1 (LengthMismatch otherwise).
Complex vector_bargmann(int n, const std::vector<SignalEvaluator>& components, Complex z);

// Phase-plane localization with weight a and window pair (psi, theta):
// entries <A_a h_m, h_{m'}>, m, m' < M, by the weak form
//   int int a(x, omega) (V_psi h_m)(x, omega) conj((V_theta h_{m'})(x, omega))
// on a fixed 2D grid. `a` is evaluated at z = x + i omega; sampled specs are
// checked against their declared bound on the grid.
OperatorMatrix gabor_daubechies_matrix(const SymbolSpec& a, const SignalEvaluator& psi,
                                       const SignalEvaluator& theta, int M);

// Bridge between the phase-plane localization operator and the two-window
// operator on the order-(j, k) layers: compares <A_a h_m, h_{m'}> with the
// matching entries of berezin_toeplitz_matrix, where the symbol on the
// complex side is sigma(z) = a evaluated at (Re z, -Im z). Windows must carry
// Hermite mode coefficients. The report holds the max entry discrepancy.
Report gabor_localization_bridge(const SymbolSpec& a, const SignalEvaluator& psi,
                                 const SignalEvaluator& theta, int j, int k, int M,
                                 double tol = 1e-6);

}  // namespace polyfock
