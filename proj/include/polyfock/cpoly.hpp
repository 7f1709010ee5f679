#pragma once

#include <map>
#include <optional>
#include <vector>

#include "polyfock/numeric.hpp"

namespace polyfock {

// Monomial z^a zbar^b. Ordered graded-lexicographically with z ahead of zbar,
// so the leading term of a polynomial is the map's last entry.
struct Exponent {
  int a = 0;  // power of z
  int b = 0;  // power of zbar
};

struct GradedLex {
  bool operator()(const Exponent& x, const Exponent& y) const {
    const int dx = x.a + x.b, dy = y.a + y.b;
    if (dx != dy) return dx < dy;
    return x.a < y.a;
  }
};

// Polynomial in the commuting pair (z, zbar) with complex coefficients.
// Mutating entry points accumulate exactly; the free operations below prune
// relative dust (threshold 1e-14 of the largest coefficient) before handing
// results back, which keeps algebraic cancellation from leaking noise terms.
class CPolynomial {
 public:
  using TermMap = std::map<Exponent, Complex, GradedLex>;

  CPolynomial() = default;
  CPolynomial(double c) { add_term(0, 0, Complex(c, 0.0)); }
  CPolynomial(Complex c) { add_term(0, 0, c); }

  static CPolynomial monomial(int a, int b, Complex c = Complex(1.0, 0.0)) {
    CPolynomial p;
    p.add_term(a, b, c);
    return p;
  }
  static CPolynomial var_z() { return monomial(1, 0); }
  static CPolynomial var_zbar() { return monomial(0, 1); }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Complex coeff(int a, int b) const {
    auto it = terms_.find(Exponent{a, b});
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
  }

  // Total degree; -1 for the zero polynomial.
  int degree() const {
    if (terms_.empty()) return -1;
    const Exponent& lead = terms_.rbegin()->first;
    return lead.a + lead.b;
  }
  int degree_z() const;
  int degree_zbar() const;

  double max_abs_coeff() const;

  // Accumulates without pruning; zero-coefficient entries are dropped so the
  // map never stores explicit zeros.
  void add_term(int a, int b, Complex c);
  void remove_term(int a, int b) { terms_.erase(Exponent{a, b}); }

  CPolynomial& operator+=(const CPolynomial& rhs);
  CPolynomial& operator-=(const CPolynomial& rhs);
  CPolynomial& operator*=(Complex s);

  // Drops terms with |coeff| < 1e-14 * max_abs_coeff().
  CPolynomial pruned() const;

  // Evaluate with zbar bound to conj(z).
  Complex evaluate(Complex z) const { return evaluate(z, std::conj(z)); }
  // Evaluate with independent slot values (nested Horner over both slots).
  Complex evaluate(Complex z, Complex zbar) const;

 private:
  TermMap terms_;
};

CPolynomial operator+(CPolynomial lhs, const CPolynomial& rhs);
CPolynomial operator-(CPolynomial lhs, const CPolynomial& rhs);
CPolynomial operator-(const CPolynomial& p);
CPolynomial operator*(const CPolynomial& lhs, const CPolynomial& rhs);
CPolynomial operator*(Complex s, CPolynomial p);
CPolynomial operator*(CPolynomial p, Complex s);
inline CPolynomial operator*(double s, const CPolynomial& p) { return Complex(s, 0.0) * p; }
inline CPolynomial operator*(const CPolynomial& p, double s) { return Complex(s, 0.0) * p; }

// Largest |p_ab - q_ab| over the union of supports.
double coeff_distance(const CPolynomial& p, const CPolynomial& q);

enum class Var { z, zbar };

// bar(p): conjugate coefficients and swap the z/zbar slots.
CPolynomial conjugate(const CPolynomial& p);

CPolynomial differentiate(const CPolynomial& p, Var v);

// 4 d/dzbar d/dz, the full Laplacian in the identification z = x + i*omega.
CPolynomial laplacian(const CPolynomial& p);

// exp(t * laplacian) p, summed exactly (the series terminates on polynomials).
CPolynomial heat_flow(const CPolynomial& p, double t);

// Exact quotient p / q in C[z, zbar], or nullopt when the leading-term
// reduction leaves a remainder. Coefficient dust below 1e-10 of the largest
// numerator coefficient is treated as zero when testing the remainder.
// Throws ZeroDivisor when q == 0.
std::optional<CPolynomial> try_divide(const CPolynomial& p, const CPolynomial& q);

// q(z, zbar) = p(z - c, zbar - conj(c)).
CPolynomial translate_arg(const CPolynomial& p, Complex c);

// Constant-coefficient-in-front differential operator: a sum of terms
// c * z^a zbar^b d/dz^l d/dzbar^m (multiplication acts after differentiation).
struct DiffKey {
  int a = 0, b = 0, l = 0, m = 0;
};

struct DiffKeyLess {
  bool operator()(const DiffKey& x, const DiffKey& y) const {
    if (x.l != y.l) return x.l < y.l;
    if (x.m != y.m) return x.m < y.m;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
};

class DiffOp {
 public:
  using TermMap = std::map<DiffKey, Complex, DiffKeyLess>;

  static DiffOp identity() { return term(0, 0, 0, 0); }
  static DiffOp term(int a, int b, int l, int m, Complex c = Complex(1.0, 0.0)) {
    DiffOp op;
    op.add_term(DiffKey{a, b, l, m}, c);
    return op;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Highest derivative order l + m across terms; -1 when empty.
  int derivative_order() const;

  void add_term(const DiffKey& k, Complex c);

  DiffOp& operator+=(const DiffOp& rhs);
  DiffOp& operator-=(const DiffOp& rhs);
  DiffOp& operator*=(Complex s);

 private:
  TermMap terms_;
};

DiffOp operator+(DiffOp lhs, const DiffOp& rhs);
DiffOp operator-(DiffOp lhs, const DiffOp& rhs);
DiffOp operator*(Complex s, DiffOp op);

double coeff_distance(const DiffOp& p, const DiffOp& q);

CPolynomial apply_diff(const DiffOp& op, const CPolynomial& p);

// Anti-Wick dictionary: c z^a zbar^b  ->  c (-1)^{a+b} pi^{-(a+b)/2} d/dz^a d/dzbar^b.
DiffOp anti_wick(const CPolynomial& p);

}  // namespace polyfock
