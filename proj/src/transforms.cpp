#include "polyfock/transforms.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "polyfock/errors.hpp"
#include "polyfock/fockbasis.hpp"
#include "polyfock/kernels.hpp"
#include "polyfock/moments.hpp"

namespace polyfock {

SignalEvaluator SignalEvaluator::hermite_mode(int m) {
  if (m < 0) throw Error("hermite_mode: index must be nonnegative");
  SignalEvaluator s;
  s.eval = [m](double t) { return Complex(hermite(m, t), 0.0); };
  s.mode_coeffs.assign(static_cast<std::size_t>(m) + 1, Complex(0.0, 0.0));
  s.mode_coeffs[static_cast<std::size_t>(m)] = Complex(1.0, 0.0);
  return s;
}

SignalEvaluator SignalEvaluator::hermite_combination(std::vector<Complex> coeffs) {
  SignalEvaluator s;
  const std::vector<Complex> c = coeffs;
  s.eval = [c](double t) {
    Complex acc(0.0, 0.0);
    for (std::size_t m = 0; m < c.size(); ++m)
      if (c[m] != Complex(0.0, 0.0)) acc += c[m] * hermite(static_cast<int>(m), t);
    return acc;
  };
  s.mode_coeffs = std::move(coeffs);
  return s;
}

SignalEvaluator SignalEvaluator::translated(double u) const {
  SignalEvaluator out;
  const std::function<Complex(double)> base = eval;
  out.eval = [base, u](double t) { return base(t - u); };
  out.center = center + u;
  return out;
}

SignalEvaluator SignalEvaluator::modulated(double eta) const {
  SignalEvaluator out;
  const std::function<Complex(double)> base = eval;
  out.eval = [base, eta](double t) {
    return std::exp(Complex(0.0, 2.0 * kPi * eta * t)) * base(t);
  };
  out.center = center;
  return out;
}

namespace {

constexpr int kBaseOrder = 64;
constexpr int kCheckOrder = 128;
constexpr double kSelfCheckTol = 1e-7;
constexpr int kPlaneGridOrder = 32;

// Line rule with the e^{+2 pi s^2} lift folded into the weights, so sums over
// integrands carrying an e^{-2 pi (t - m)^2} envelope become plain Lebesgue
// integrals. Cached: grid construction costs an eigendecomposition.
struct LiftedLineRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd lifted;
};

LiftedLineRule make_line_rule(int order) {
  const GaussGrid1D g = gh_grid_1d(order, 2.0 * kPi);
  LiftedLineRule r;
  r.nodes = g.nodes;
  r.lifted.resize(g.order);
  for (int i = 0; i < g.order; ++i)
    r.lifted[i] = g.weights[i] * std::exp(2.0 * kPi * g.nodes[i] * g.nodes[i]);
  return r;
}

const LiftedLineRule& line_rule(int order) {
  static const LiftedLineRule base = make_line_rule(kBaseOrder);
  static const LiftedLineRule fine = make_line_rule(kCheckOrder);
  return order == kBaseOrder ? base : fine;
}

// Plane rule for integrands with an e^{-pi (x^2 + omega^2)} envelope, again
// with the inverse envelope folded into per-axis weights.
struct LiftedPlaneRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd lifted;
};

const LiftedPlaneRule& plane_rule() {
  static const LiftedPlaneRule r = [] {
    const GaussGrid g = gh_grid_2d(kPlaneGridOrder);
    LiftedPlaneRule p;
    p.nodes = g.axis.nodes;
    p.lifted.resize(g.order());
    for (int i = 0; i < g.order(); ++i)
      p.lifted[i] = g.axis.weights[i] * std::exp(kPi * g.axis.nodes[i] * g.axis.nodes[i]);
    return p;
  }();
  return r;
}

Complex line_quadrature(const std::function<Complex(double)>& F, double m, int order) {
  const LiftedLineRule& r = line_rule(order);
  std::vector<Complex> vals(static_cast<std::size_t>(r.nodes.size()));
  for (int i = 0; i < r.nodes.size(); ++i)
    vals[static_cast<std::size_t>(i)] = r.lifted[i] * F(m + r.nodes[i]);
  return pairwise_sum(std::move(vals));
}

// Order-64 value cross-checked against order 128; the coarse/fine gap is the
// self-reported truncation estimate.
Complex checked_line_integral(const std::function<Complex(double)>& F, double m,
                              const char* what) {
  const Complex coarse = line_quadrature(F, m, kBaseOrder);
  const Complex fine = line_quadrature(F, m, kCheckOrder);
  if (std::abs(coarse - fine) > kSelfCheckTol)
    throw QuadratureOrderInsufficient(std::string(what) +
                                      ": order-64 and order-128 values differ by " +
                                      format_real(std::abs(coarse - fine)));
  return fine;
}

}  // namespace

Complex signal_inner_product(const SignalEvaluator& f, const SignalEvaluator& g) {
  const double m = 0.5 * (f.center + g.center);
  return checked_line_integral(
      [&](double t) { return f.eval(t) * std::conj(g.eval(t)); }, m, "signal_inner_product");
}

Complex stft(const SignalEvaluator& f, const SignalEvaluator& window, double x, double omega) {
  const double m = 0.5 * (f.center + window.center + x);
  return checked_line_integral(
      [&](double t) {
        return f.eval(t) * std::conj(window.eval(t - x)) *
               std::exp(Complex(0.0, -2.0 * kPi * t * omega));
      },
      m, "stft");
}

Complex stft_pairing(const SignalEvaluator& f, const SignalEvaluator& psi,
                     const SignalEvaluator& g, const SignalEvaluator& phi) {
  const LiftedPlaneRule& r = plane_rule();
  const int nn = static_cast<int>(r.nodes.size());
  std::vector<Complex> vals;
  vals.reserve(static_cast<std::size_t>(nn) * nn);
  for (int ix = 0; ix < nn; ++ix)
    for (int iy = 0; iy < nn; ++iy) {
      const double x = r.nodes[ix], om = r.nodes[iy];
      const double lift = r.lifted[ix] * r.lifted[iy];
      vals.push_back(lift * stft(f, psi, x, om) * std::conj(stft(g, phi, x, om)));
    }
  return pairwise_sum(std::move(vals));
}

Complex bargmann(const SignalEvaluator& f, Complex z) {
  const double m = 0.5 * (f.center + z.real());
  const Complex value = checked_line_integral(
      [&](double t) {
        return f.eval(t) * std::exp(2.0 * kPi * t * z - kPi * t * t - 0.5 * kPi * z * z);
      },
      m, "bargmann");
  return std::pow(2.0, 0.25) * value;
}

Complex true_poly_bargmann(int j, const SignalEvaluator& f, Complex z) {
  if (j < 0) throw Error("true_poly_bargmann: order must be nonnegative");
  if (std::abs(z) > kEvalRadiusCap)
    throw Error("true_poly_bargmann: |z| exceeds the evaluation radius " +
                format_real(kEvalRadiusCap));
  const SignalEvaluator hj = SignalEvaluator::hermite_mode(j);
  const double x = z.real(), omega = z.imag();
  const Complex v = stft(f, hj, x, -omega);
  return std::exp(Complex(0.5 * kPi * (x * x + omega * omega), -kPi * x * omega)) * v;
}

Complex vector_bargmann(int n, const std::vector<SignalEvaluator>& components, Complex z) {
  if (n < 0 || components.size() != static_cast<std::size_t>(n) + 1)
    throw LengthMismatch("vector_bargmann: expected " + std::to_string(n + 1) +
                         " components, got " + std::to_string(components.size()));
  Complex acc(0.0, 0.0);
  for (int j = 0; j <= n; ++j) acc += true_poly_bargmann(j, components[j], z);
  return acc;
}

OperatorMatrix gabor_daubechies_matrix(const SymbolSpec& a, const SignalEvaluator& psi,
                                       const SignalEvaluator& theta, int M) {
  if (M < 1) throw Error("gabor_daubechies_matrix: need at least one mode");
  OperatorMatrix out = OperatorMatrix::zero(0, M - 1);
  const LiftedPlaneRule& r = plane_rule();
  const int nn = static_cast<int>(r.nodes.size());
  std::vector<SignalEvaluator> modes;
  modes.reserve(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) modes.push_back(SignalEvaluator::hermite_mode(m));
  // Per-entry value streams, reduced pairwise for a deterministic result.
  std::vector<std::vector<Complex>> acc(static_cast<std::size_t>(M) * M);
  for (auto& v : acc) v.reserve(static_cast<std::size_t>(nn) * nn);
  std::vector<Complex> v_psi(static_cast<std::size_t>(M)), v_theta(static_cast<std::size_t>(M));
  for (int ix = 0; ix < nn; ++ix)
    for (int iy = 0; iy < nn; ++iy) {
      const double x = r.nodes[ix], om = r.nodes[iy];
      const Complex av = a.eval(Complex(x, om));
      if (!(std::abs(av) <= a.bound * (1.0 + 1e-12)))
        throw UnboundedSymbol("plane weight exceeds its declared bound " +
                              format_real(a.bound) + " at (x, omega) = (" +
                              format_real(x) + ", " + format_real(om) + ")");
      const double lift = r.lifted[ix] * r.lifted[iy];
      for (int m = 0; m < M; ++m) {
        v_psi[static_cast<std::size_t>(m)] = stft(modes[static_cast<std::size_t>(m)], psi, x, om);
        v_theta[static_cast<std::size_t>(m)] =
            stft(modes[static_cast<std::size_t>(m)], theta, x, om);
      }
      for (int mr = 0; mr < M; ++mr)
        for (int mc = 0; mc < M; ++mc)
          acc[static_cast<std::size_t>(mr) * M + mc].push_back(
              lift * av * v_psi[static_cast<std::size_t>(mc)] *
              std::conj(v_theta[static_cast<std::size_t>(mr)]));
    }
  for (int mr = 0; mr < M; ++mr)
    for (int mc = 0; mc < M; ++mc)
      out.mat(mr, mc) = pairwise_sum(std::move(acc[static_cast<std::size_t>(mr) * M + mc]));
  return out;
}

Report gabor_localization_bridge(const SymbolSpec& a, const SignalEvaluator& psi,
                                 const SignalEvaluator& theta, int j, int k, int M,
                                 double tol) {
  if (j < 0 || k < 0) throw Error("gabor_localization_bridge: orders must be nonnegative");
  if (psi.mode_coeffs.empty() || theta.mode_coeffs.empty())
    throw Error("gabor_localization_bridge: windows must carry Hermite mode coefficients");
  // Complex-side symbol: sigma(z) = a(Re z, -Im z), i.e. the plane weight read
  // at the slot-swapped point.
  SymbolSpec sigma;
  if (a.is_polynomial()) {
    CPolynomial swapped;
    for (const auto& [e, c] : a.poly.terms()) swapped.add_term(e.b, e.a, c);
    sigma = SymbolSpec::polynomial(swapped);
  } else {
    const std::function<Complex(Complex)> fn = a.sampled;
    sigma = SymbolSpec::from_samples([fn](Complex z) { return fn(std::conj(z)); }, a.bound);
  }
  CPolynomial Psi, Theta;
  for (std::size_t m = 0; m < psi.mode_coeffs.size(); ++m)
    Psi += psi.mode_coeffs[m] * phi_jk(j, static_cast<int>(m));
  for (std::size_t m = 0; m < theta.mode_coeffs.size(); ++m)
    Theta += theta.mode_coeffs[m] * phi_jk(k, static_cast<int>(m));
  const OperatorMatrix plane = gabor_daubechies_matrix(a, psi, theta, M);
  const int n = std::max(j, k);
  const OperatorMatrix L = berezin_toeplitz_matrix(Psi, Theta, sigma, n, M - 1);
  Report rep;
  rep.identity = "plane-localization-bridge";
  rep.tolerance = tol;
  for (int mr = 0; mr < M; ++mr)
    for (int mc = 0; mc < M; ++mc)
      rep.observe(std::abs(plane.mat(mr, mc) - L.mat(L.index(k, mr), L.index(j, mc))));
  rep.detail_raw("layers", "[" + std::to_string(j) + ", " + std::to_string(k) + "]");
  rep.detail_number("modes", static_cast<double>(M));
  rep.finalize();
  return rep;
}

}  // namespace polyfock
