#include "polyfock/report.hpp"

#include <cstdio>

namespace polyfock {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex_pair(Complex v) {
  return "[" + format_real(v.real()) + ", " + format_real(v.imag()) + "]";
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void Report::detail_raw(const std::string& key, const std::string& raw_json) {
  details.emplace_back(key, raw_json);
}

void Report::detail_string(const std::string& key, const std::string& s) {
  details.emplace_back(key, "\"" + json_escape(s) + "\"");
}

void Report::detail_number(const std::string& key, double v) {
  details.emplace_back(key, format_real(v));
}

std::string Report::to_json() const {
  std::string out = "{\"identity\": \"" + json_escape(identity) + "\"";
  out += ", \"max_abs_error\": " + format_real(max_abs_error);
  out += ", \"tolerance\": " + format_real(tolerance);
  out += std::string(", \"pass\": ") + (pass ? "true" : "false");
  out += ", \"details\": {";
  for (std::size_t i = 0; i < details.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + json_escape(details[i].first) + "\": " + details[i].second;
  }
  out += "}}";
  return out;
}

std::string reports_to_json(const std::vector<Report>& reports) {
  std::string out = "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) out += ",\n ";
    out += reports[i].to_json();
  }
  out += "]";
  return out;
}

}  // namespace polyfock
