#include "polyfock/cpoly.hpp"

#include <algorithm>
#include <cmath>

#include "polyfock/errors.hpp"

namespace polyfock {

namespace {
constexpr double kPruneRel = 1e-14;
constexpr double kDivideDustRel = 1e-10;
}  // namespace

int CPolynomial::degree_z() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.a);
  return terms_.empty() ? -1 : d;
}

int CPolynomial::degree_zbar() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.b);
  return terms_.empty() ? -1 : d;
}

double CPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

void CPolynomial::add_term(int a, int b, Complex c) {
  if (c == Complex(0.0, 0.0)) return;
  Exponent key{a, b};
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }
}

CPolynomial& CPolynomial::operator+=(const CPolynomial& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e.a, e.b, c);
  return *this;
}

CPolynomial& CPolynomial::operator-=(const CPolynomial& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e.a, e.b, -c);
  return *this;
}

CPolynomial& CPolynomial::operator*=(Complex s) {
  if (s == Complex(0.0, 0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

CPolynomial CPolynomial::pruned() const {
  const double cut = kPruneRel * max_abs_coeff();
  CPolynomial out;
  for (const auto& [e, c] : terms_)
    if (std::abs(c) >= cut) out.terms_.emplace(e, c);
  return out;
}

Complex CPolynomial::evaluate(Complex z, Complex zbar) const {
  if (terms_.empty()) return Complex(0.0, 0.0);
  const int na = degree_z() + 1, nb = degree_zbar() + 1;
  // Dense staircase: row a holds the zbar-polynomial multiplying z^a.
  std::vector<Complex> dense(static_cast<std::size_t>(na) * nb, Complex(0.0, 0.0));
  for (const auto& [e, c] : terms_) dense[static_cast<std::size_t>(e.a) * nb + e.b] = c;
  Complex acc(0.0, 0.0);
  for (int a = na - 1; a >= 0; --a) {
    Complex row(0.0, 0.0);
    for (int b = nb - 1; b >= 0; --b) row = row * zbar + dense[static_cast<std::size_t>(a) * nb + b];
    acc = acc * z + row;
  }
  return acc;
}

CPolynomial operator+(CPolynomial lhs, const CPolynomial& rhs) {
  lhs += rhs;
  return lhs.pruned();
}

CPolynomial operator-(CPolynomial lhs, const CPolynomial& rhs) {
  lhs -= rhs;
  return lhs.pruned();
}

CPolynomial operator-(const CPolynomial& p) {
  CPolynomial out;
  for (const auto& [e, c] : p.terms()) out.add_term(e.a, e.b, -c);
  return out;
}

CPolynomial operator*(const CPolynomial& lhs, const CPolynomial& rhs) {
  CPolynomial out;
  for (const auto& [e1, c1] : lhs.terms())
    for (const auto& [e2, c2] : rhs.terms()) out.add_term(e1.a + e2.a, e1.b + e2.b, c1 * c2);
  return out.pruned();
}

CPolynomial operator*(Complex s, CPolynomial p) {
  p *= s;
  return p;
}

CPolynomial operator*(CPolynomial p, Complex s) {
  p *= s;
  return p;
}

double coeff_distance(const CPolynomial& p, const CPolynomial& q) {
  double m = 0.0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c - q.coeff(e.a, e.b)));
  for (const auto& [e, c] : q.terms()) m = std::max(m, std::abs(c - p.coeff(e.a, e.b)));
  return m;
}

CPolynomial conjugate(const CPolynomial& p) {
  CPolynomial out;
  for (const auto& [e, c] : p.terms()) out.add_term(e.b, e.a, std::conj(c));
  return out;
}

CPolynomial differentiate(const CPolynomial& p, Var v) {
  CPolynomial out;
  for (const auto& [e, c] : p.terms()) {
    if (v == Var::z) {
      if (e.a > 0) out.add_term(e.a - 1, e.b, c * static_cast<double>(e.a));
    } else {
      if (e.b > 0) out.add_term(e.a, e.b - 1, c * static_cast<double>(e.b));
    }
  }
  return out;
}

CPolynomial laplacian(const CPolynomial& p) {
  return 4.0 * differentiate(differentiate(p, Var::z), Var::zbar);
}

CPolynomial heat_flow(const CPolynomial& p, double t) {
  CPolynomial out = p;
  CPolynomial layer = p;
  // The iterate drops total degree by 2 each step, so the series is finite.
  for (int n = 1; !layer.is_zero(); ++n) {
    layer = laplacian(layer);
    if (layer.is_zero()) break;
    out += (Complex(t / n, 0.0)) * layer;
    layer = (Complex(t / n, 0.0)) * layer;
  }
  return out.pruned();
}

std::optional<CPolynomial> try_divide(const CPolynomial& p, const CPolynomial& q) {
  if (q.is_zero()) throw ZeroDivisor("try_divide: divisor is the zero polynomial");
  if (p.is_zero()) return CPolynomial();

  const double dust = kDivideDustRel * p.max_abs_coeff();
  const Exponent qlead = q.terms().rbegin()->first;
  const Complex qc = q.terms().rbegin()->second;

  CPolynomial rem = p;
  CPolynomial quot;
  while (!rem.is_zero()) {
    if (rem.max_abs_coeff() <= dust) return quot.pruned();
    const Exponent rlead = rem.terms().rbegin()->first;
    const Complex rc = rem.terms().rbegin()->second;
    if (std::abs(rc) <= dust) {
      // Leading coefficient is numerical dust; discard and keep reducing.
      rem.remove_term(rlead.a, rlead.b);
      continue;
    }
    if (rlead.a < qlead.a || rlead.b < qlead.b) return std::nullopt;
    const Exponent shift{rlead.a - qlead.a, rlead.b - qlead.b};
    const Complex factor = rc / qc;
    quot.add_term(shift.a, shift.b, factor);
    CPolynomial sub;
    for (const auto& [e, c] : q.terms()) sub.add_term(e.a + shift.a, e.b + shift.b, c * factor);
    rem -= sub;
    // The reduction cancels the leading term exactly in exact arithmetic;
    // drop any floating-point residue left behind so progress is guaranteed.
    rem.remove_term(rlead.a, rlead.b);
  }
  return quot.pruned();
}

CPolynomial translate_arg(const CPolynomial& p, Complex c) {
  const Complex cz = -c, cb = -std::conj(c);
  CPolynomial out;
  for (const auto& [e, coef] : p.terms()) {
    for (int i = 0; i <= e.a; ++i) {
      const Complex fz = binomial(e.a, i) * std::pow(cz, e.a - i);
      for (int j = 0; j <= e.b; ++j) {
        const Complex fb = binomial(e.b, j) * std::pow(cb, e.b - j);
        out.add_term(i, j, coef * fz * fb);
      }
    }
  }
  return out.pruned();
}

int DiffOp::derivative_order() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.l + k.m);
  return d;
}

void DiffOp::add_term(const DiffKey& k, Complex c) {
  if (c == Complex(0.0, 0.0)) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }
}

DiffOp& DiffOp::operator+=(const DiffOp& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k, c);
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k, -c);
  return *this;
}

DiffOp& DiffOp::operator*=(Complex s) {
  if (s == Complex(0.0, 0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

DiffOp operator+(DiffOp lhs, const DiffOp& rhs) {
  lhs += rhs;
  return lhs;
}

DiffOp operator-(DiffOp lhs, const DiffOp& rhs) {
  lhs -= rhs;
  return lhs;
}

DiffOp operator*(Complex s, DiffOp op) {
  op *= s;
  return op;
}

double coeff_distance(const DiffOp& p, const DiffOp& q) {
  double m = 0.0;
  auto lookup = [](const DiffOp& op, const DiffKey& k) {
    auto it = op.terms().find(k);
    return it == op.terms().end() ? Complex(0.0, 0.0) : it->second;
  };
  for (const auto& [k, c] : p.terms()) m = std::max(m, std::abs(c - lookup(q, k)));
  for (const auto& [k, c] : q.terms()) m = std::max(m, std::abs(c - lookup(p, k)));
  return m;
}

CPolynomial apply_diff(const DiffOp& op, const CPolynomial& p) {
  CPolynomial out;
  for (const auto& [k, c] : op.terms()) {
    CPolynomial part = p;
    for (int i = 0; i < k.l && !part.is_zero(); ++i) part = differentiate(part, Var::z);
    for (int i = 0; i < k.m && !part.is_zero(); ++i) part = differentiate(part, Var::zbar);
    if (part.is_zero()) continue;
    out += CPolynomial::monomial(k.a, k.b, c) * part;
  }
  return out.pruned();
}

DiffOp anti_wick(const CPolynomial& p) {
  DiffOp op;
  for (const auto& [e, c] : p.terms()) {
    const double scale = parity(e.a + e.b) * std::pow(kPi, -0.5 * (e.a + e.b));
    op.add_term(DiffKey{0, 0, e.a, e.b}, c * scale);
  }
  return op;
}

}  // namespace polyfock
