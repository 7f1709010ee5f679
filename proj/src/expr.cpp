#include "polyfock/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "polyfock/errors.hpp"
#include "polyfock/fockbasis.hpp"
#include "polyfock/report.hpp"

namespace polyfock {

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!consume(c)) throw ParseError(pos, what, "expected '" + what + "' at offset " + std::to_string(pos));
  }

  std::string read_ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::islower(static_cast<unsigned char>(text[pos]))) ++pos;
    return text.substr(start, pos - start);
  }

  // Number literal: digits with optional fraction and exponent.
  double read_number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      std::size_t mark = pos;
      ++pos;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      } else {
        pos = mark;  // bare 'e' belongs to no exponent
      }
    }
    if (pos == start) throw ParseError(pos, "number", "expected number at offset " + std::to_string(pos));
    return std::strtod(text.substr(start, pos - start).c_str(), nullptr);
  }

  int read_uint() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start)
      throw ParseError(pos, "unsigned integer", "expected unsigned integer at offset " + std::to_string(pos));
    return std::atoi(text.substr(start, pos - start).c_str());
  }

  CPolynomial parse_expr() {
    bool neg = consume('-');
    CPolynomial acc = parse_term();
    if (neg) acc = -acc;
    while (true) {
      skip_ws();
      if (consume('+')) {
        acc += parse_term();
      } else if (consume('-')) {
        acc -= parse_term();
      } else {
        break;
      }
    }
    return acc;
  }

  CPolynomial parse_term() {
    CPolynomial acc = parse_factor();
    while (consume('*')) acc = acc * parse_factor();
    return acc;
  }

  CPolynomial parse_factor() {
    CPolynomial base = parse_atom();
    if (consume('^')) {
      int e = read_uint();
      CPolynomial out(1.0);
      for (int i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return base;
  }

  CPolynomial parse_atom() {
    skip_ws();
    if (pos >= text.size()) throw ParseError(pos, "atom", "unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      CPolynomial inner = parse_expr();
      expect(')', ")");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return CPolynomial(read_number());
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      std::string id = read_ident();
      if (id == "z") return CPolynomial::var_z();
      if (id == "zbar") return CPolynomial::var_zbar();
      if (id == "pi") return CPolynomial(kPi);
      if (id == "i") return CPolynomial(Complex(0.0, 1.0));
      if (id == "phi") {
        expect('(', "(");
        int j = read_uint();
        expect(',', ",");
        int k = read_uint();
        expect(')', ")");
        return phi_jk(j, k);
      }
      throw ParseError(start, "z | zbar | pi | i | phi | number | (",
                       "unknown identifier '" + id + "' at offset " + std::to_string(start));
    }
    throw ParseError(pos, "atom", std::string("unexpected character '") + c + "' at offset " +
                                      std::to_string(pos));
  }
};

std::string monomial_text(int a, int b) {
  std::string out;
  if (a > 0) {
    out += "z";
    if (a > 1) out += "^" + std::to_string(a);
  }
  if (b > 0) {
    if (!out.empty()) out += "*";
    out += "zbar";
    if (b > 1) out += "^" + std::to_string(b);
  }
  return out;
}

// Renders a positive magnitude, recognizing integer multiples of small pi
// powers (within 1e-12 relative) so e.g. phi_{1,1} prints with a symbolic pi.
// Recognized strings re-parse to the same coefficient up to that tolerance.
std::string scalar_text(double mag) {
  for (int m = 1; m <= 4; ++m) {
    const double q = mag / std::pow(kPi, m);
    const double r = std::round(q);
    if (r >= 1.0 && r <= 4096.0 && std::abs(q - r) <= 1e-12 * q) {
      const std::string head = r == 1.0 ? "" : format_real(r) + "*";
      return head + (m == 1 ? "pi" : "pi^" + std::to_string(m));
    }
  }
  return format_real(mag);
}

// Renders one coefficient. For real/imaginary-axis values the sign is pulled
// out through `negative` so terms can be joined with " - "; mixed complex
// coefficients are emitted as a parenthesized expression with no outer sign.
std::string coefficient_text(Complex c, bool has_monomial, bool* negative) {
  *negative = false;
  if (c.imag() == 0.0) {
    double re = c.real();
    *negative = re < 0.0;
    double mag = *negative ? -re : re;
    if (mag == 1.0 && has_monomial) return "";
    return scalar_text(mag);
  }
  if (c.real() == 0.0) {
    double im = c.imag();
    *negative = im < 0.0;
    double mag = *negative ? -im : im;
    if (mag == 1.0) return "i";
    return scalar_text(mag) + "*i";
  }
  std::string out = "(" + format_real(c.real());
  out += c.imag() < 0.0 ? " - " : " + ";
  double mag = c.imag() < 0.0 ? -c.imag() : c.imag();
  out += (mag == 1.0 ? std::string("i") : format_real(mag) + "*i") + ")";
  return out;
}

}  // namespace

CPolynomial parse_expression(const std::string& text) {
  Parser p(text);
  CPolynomial out = p.parse_expr();
  if (!p.at_end())
    throw ParseError(p.pos, "end of input",
                     "trailing input at offset " + std::to_string(p.pos));
  return out;
}

std::string to_expression(const CPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const std::string mono = monomial_text(it->first.a, it->first.b);
    bool neg = false;
    std::string coef = coefficient_text(it->second, !mono.empty(), &neg);
    std::string body = coef;
    if (!mono.empty()) {
      if (!coef.empty()) body += "*";
      body += mono;
    }
    if (first) {
      out += (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

std::string to_expression(const DiffOp& op) {
  if (op.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
    const DiffKey& k = it->first;
    std::string mono = monomial_text(k.a, k.b);
    if (k.l > 0) {
      if (!mono.empty()) mono += "*";
      mono += "dz";
      if (k.l > 1) mono += "^" + std::to_string(k.l);
    }
    if (k.m > 0) {
      if (!mono.empty()) mono += "*";
      mono += "dzbar";
      if (k.m > 1) mono += "^" + std::to_string(k.m);
    }
    bool neg = false;
    std::string coef = coefficient_text(it->second, !mono.empty(), &neg);
    std::string body = coef;
    if (!mono.empty()) {
      if (!coef.empty()) body += "*";
      body += mono;
    }
    if (first) {
      out += (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

}  // namespace polyfock
