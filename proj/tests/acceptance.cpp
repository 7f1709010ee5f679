// Acceptance gate: runs the eleven verification criteria at the pinned
// configuration, printing one line per criterion. Exit code 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <vector>

#include "polyfock/report.hpp"
#include "polyfock/verify.hpp"

using namespace polyfock;

int main() {
  const SuiteConfig cfg;  // pinned: quad_order 64, truncation 5
  struct Entry {
    const char* name;
    Report (*fn)(const SuiteConfig&);
    double time_limit;  // seconds
  };
  const std::vector<Entry> entries = {
      {"basis-two-constructions", check_basis_forms, 1.0},
      {"basis-orthonormality", check_orthonormality, 5.0},
      {"ladder-commutator-eigenrelation", check_structure_operators, 1.0},
      {"heat-flow-intertwining", check_heat_intertwining, 1.0},
      {"transform-fidelity", check_transform_fidelity, 30.0},
      {"reproducing-kernels", check_reproducing_kernels, 10.0},
      {"factorization-blocks", check_factorization_blocks, 60.0},
      {"factorization-direct-sum", check_factorization_sum, 60.0},
      {"norm-bounds", check_norm_bounds, 30.0},
      {"gabor-localization-bridge", check_plane_bridge, 60.0},
      {"convolution-commutation", check_convolution_commutation, 10.0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const Report rep = entries[i].fn(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < entries[i].time_limit;
    const bool ok = rep.pass && in_time;
    if (!ok) ++failures;
    std::printf("[%s] criterion %02zu %-32s max_abs_error=%.3e tolerance=%.0e elapsed=%.2fs%s\n",
                ok ? "PASS" : "FAIL", i + 1, entries[i].name, rep.max_abs_error, rep.tolerance,
                secs, in_time ? "" : " (over time budget)");
    if (!rep.pass)
      for (const auto& [key, value] : rep.details)
        if (key == "error") std::printf("        %s\n", value.c_str());
  }
  std::printf("%d/11 criteria passed\n", static_cast<int>(entries.size()) - failures);
  return failures == 0 ? 0 : 1;
}
