#pragma once

#include <string>
#include <utility>
#include <vector>

#include "polyfock/numeric.hpp"

namespace polyfock {

// 17-significant-digit decimal rendering; round-trips through strtod and is
// byte-stable across runs, which the serialization contract relies on.
std::string format_real(double v);

// "[re, im]" with format_real components.
std::string format_complex_pair(Complex v);

std::string json_escape(const std::string& s);

// Outcome of one verification identity. details preserves insertion order and
// stores values as pre-rendered JSON fragments.
struct Report {
  std::string identity;
  double max_abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> details;

  void observe(double err) { max_abs_error = err > max_abs_error ? err : max_abs_error; }
  void finalize() { pass = max_abs_error <= tolerance; }

  void detail_raw(const std::string& key, const std::string& raw_json);
  void detail_string(const std::string& key, const std::string& s);
  void detail_number(const std::string& key, double v);

  std::string to_json() const;
};

std::string reports_to_json(const std::vector<Report>& reports);

}  // namespace polyfock
