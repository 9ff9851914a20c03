#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dwet/channel.hpp"
#include "dwet/power.hpp"

// Independent oracles and randomized property checks. The oracles below
// share no code path with the closed-form power routines they check.

namespace dwet::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  long instances = 0;
  long violations = 0;
  double worst = 0.0;  // check-specific worst observed quantity
  std::string detail;
};

/// rho P |sum sqrt(beta_m) e^{j(phi_m - theta_m)}|^2 via std::complex.
double phasor_power(const Scenario& s, const PhaseAssignment& pa);

/// rho / T * integral over one carrier period of r(t)^2, sampled at
/// `samples` equally spaced instants (exact for samples >= 3).
double time_domain_power(const Scenario& s, const PhaseAssignment& pa, int samples = 64);

/// Best phase for transmitter m against the other active transmitters,
/// computed from the complex sum.
double phasor_target(const Scenario& s, const PhaseAssignment& pa, std::size_t m);

CheckResult check_phasor_oracle(std::uint64_t seed, int instances, int max_m, double rel_tol);
CheckResult check_partial_power(std::uint64_t seed, int instances, int max_m, double rel_tol);
CheckResult check_time_domain(std::uint64_t seed, int instances, int max_m, double rel_tol);
CheckResult check_bisection_grid(std::uint64_t seed, int runs, int grid_points);
CheckResult check_error_bound(std::uint64_t seed, int runs_per_n, int n_max);
CheckResult check_efficiency_sandwich(std::uint64_t seed, int scenarios,
                                      const std::vector<int>& m_list, int n_max, double tol);
CheckResult check_induction(std::uint64_t seed, int instances, double tol);
CheckResult check_corollary_values();

/// Every check at the sizes used by the acceptance suite, scaled by `scale`
/// (1.0 = full size).
std::vector<CheckResult> run_suite(std::uint64_t seed, double scale = 1.0);

}  // namespace dwet::verify
