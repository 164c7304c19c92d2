#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Invariant suite shared by `eigcount selftest` and the acceptance runner.

namespace eigcount {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  unsigned threads = 0;
  /// Full sizes (1000 Sturm polynomials, 200 homotopy samples per shape)
  /// instead of the quick ones.
  bool thorough = false;
  std::uint64_t seed = 1;
};

CheckResult check_unit_dimension();
/// Max relative deviation between the four routes over 2 <= n <= nmax,
/// 1 <= d <= dmax, against 1e-8.
CheckResult check_route_agreement(int nmax = 12, int dmax = 8);
CheckResult check_closed_values();
CheckResult check_gamma_complement();
CheckResult check_integral_identities();
CheckResult check_beta_identities();
CheckResult check_series_roundtrip();
CheckResult check_sturm_companion(int polynomials, std::uint64_t seed);
CheckResult check_homotopy_diagonal();
CheckResult check_homotopy_completeness(int samples_per_shape, std::uint64_t seed,
                                        unsigned threads);

std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

}  // namespace eigcount
