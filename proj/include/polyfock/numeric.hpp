#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace polyfock {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// n! as a double. Exact for n <= 22; correctly rounded beyond that. The table
// form keeps repeated small-index lookups cheap inside symbolic contractions.
inline double factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(171);
    t[0] = 1.0;
    for (int i = 1; i <= 170; ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  return table[static_cast<std::size_t>(n)];
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

inline double parity(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// Deterministic tree reduction: the summation order depends only on the
// element count, never on chunking or thread scheduling, so accumulated
// quadrature values are bit-reproducible.
template <class T>
T pairwise_sum(std::vector<T> buf) {
  std::size_t n = buf.size();
  if (n == 0) return T{};
  while (n > 1) {
    std::size_t h = 0;
    for (std::size_t i = 0; i + 1 < n; i += 2) buf[h++] = buf[i] + buf[i + 1];
    if (n & 1) buf[h++] = buf[n - 1];
    n = h;
  }
  return buf[0];
}

}  // namespace polyfock
