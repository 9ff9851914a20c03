#include "dwet/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>

#include "dwet/adapt.hpp"
#include "dwet/protocol.hpp"
#include "dwet/rng.hpp"

namespace dwet::verify {

namespace {

constexpr double kPi = std::numbers::pi;

// Angle difference wrapped to [-pi, pi] without the library normalizer.
double wrapped_gap(double a, double b) { return std::remainder(a - b, 2.0 * kPi); }

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Gains spread over six decades, phases uniform.
Scenario random_scenario(Rng& rng, int m) {
  Scenario s;
  s.transmit_power = uniform(rng, 0.5, 2.0);
  s.conversion_eff = uniform(rng, 0.3, 1.0);
  s.channels.resize(m);
  for (auto& c : s.channels) {
    c.beta = std::pow(10.0, uniform(rng, -6.0, 0.0));
    c.theta = std::remainder(uniform(rng, -kPi, kPi), 2.0 * kPi);
    if (c.theta >= kPi) c.theta = -kPi;
  }
  return s;
}

std::vector<double> random_phases(Rng& rng, int m) {
  std::vector<double> p(m);
  for (auto& x : p) {
    x = std::remainder(uniform(rng, -kPi, kPi), 2.0 * kPi);
    if (x >= kPi) x = -kPi;
  }
  return p;
}

double rel_err(double got, double want, double floor) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

}  // namespace

double phasor_power(const Scenario& s, const PhaseAssignment& pa) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t m = 0; m < s.size(); ++m) {
    if (!pa.active[m]) continue;
    acc += std::polar(std::sqrt(s.channels[m].beta), pa.phases[m] - s.channels[m].theta);
  }
  return s.conversion_eff * s.transmit_power * std::norm(acc);
}

double time_domain_power(const Scenario& s, const PhaseAssignment& pa, int samples) {
  // Normalized time u = f_c t over one period; r(u) = sqrt(2P) sum sqrt(beta)
  // cos(2 pi u + phi - theta).
  double acc = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double u = static_cast<double>(k) / samples;
    double r = 0.0;
    for (std::size_t m = 0; m < s.size(); ++m) {
      if (!pa.active[m]) continue;
      r += std::sqrt(s.channels[m].beta) *
           std::cos(2.0 * kPi * u + pa.phases[m] - s.channels[m].theta);
    }
    r *= std::sqrt(2.0 * s.transmit_power);
    acc += r * r;
  }
  return s.conversion_eff * acc / samples;
}

double phasor_target(const Scenario& s, const PhaseAssignment& pa, std::size_t m) {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == m || !pa.active[i]) continue;
    acc += std::polar(std::sqrt(s.channels[i].beta), pa.phases[i] - s.channels[i].theta);
  }
  return s.channels[m].theta + std::arg(acc);
}

CheckResult check_phasor_oracle(std::uint64_t seed, int instances, int max_m, double rel_tol) {
  CheckResult res;
  res.name = "phasor-sum oracle vs harvested_power";
  for (int i = 0; i < instances; ++i) {
    Rng rng = make_stream(seed, i, 1);
    const int m = uniform_int(rng, 1, max_m);
    const Scenario s = random_scenario(rng, m);
    PhaseAssignment pa = PhaseAssignment::all_active(random_phases(rng, m));
    for (int k = 0; k < m; ++k) pa.active[k] = uniform(rng, 0.0, 1.0) < 0.85;
    // Denominator floor: near-total cancellation is measured against the
    // scale of the largest possible power instead.
    const double floor = 1e-6 * optimal_power(s);
    const double e = rel_err(harvested_power(s, pa), phasor_power(s, pa), floor);
    res.worst = std::max(res.worst, e);
    if (!(e <= rel_tol)) ++res.violations;
    ++res.instances;
  }
  res.passed = res.violations == 0;
  res.detail = fmt("max relative error %.3e", res.worst);
  return res;
}

CheckResult check_partial_power(std::uint64_t seed, int instances, int max_m, double rel_tol) {
  CheckResult res;
  res.name = "partial_power vs harvested_power on matched active sets";
  for (int i = 0; i < instances; ++i) {
    Rng rng = make_stream(seed, i, 2);
    const int m = uniform_int(rng, 2, max_m);
    const Scenario s = random_scenario(rng, m);
    PhaseAssignment pa = PhaseAssignment::all_active(random_phases(rng, m));
    for (int k = 0; k < m; ++k) pa.active[k] = uniform(rng, 0.0, 1.0) < 0.7;
    const auto adapting = static_cast<std::size_t>(uniform_int(rng, 0, m - 1));
    const double phi = random_phases(rng, 1)[0];

    const SumSignal ss = sum_signal(s, pa, adapting);
    const double partial = partial_power(s, ss, adapting, phi);
    PhaseAssignment joined = pa;
    joined.active[adapting] = true;
    joined.phases[adapting] = phi;
    const double full = harvested_power(s, joined);
    const double e = rel_err(partial, full, 1e-6 * optimal_power(s));
    res.worst = std::max(res.worst, e);
    if (!(e <= rel_tol)) ++res.violations;
    ++res.instances;
  }
  res.passed = res.violations == 0;
  res.detail = fmt("max relative error %.3e", res.worst);
  return res;
}

CheckResult check_time_domain(std::uint64_t seed, int instances, int max_m, double rel_tol) {
  CheckResult res;
  res.name = "time-domain integration vs harvested_power";
  for (int i = 0; i < instances; ++i) {
    Rng rng = make_stream(seed, i, 3);
    const int m = uniform_int(rng, 1, max_m);
    const Scenario s = random_scenario(rng, m);
    const PhaseAssignment pa = PhaseAssignment::all_active(random_phases(rng, m));
    const double e =
        rel_err(harvested_power(s, pa), time_domain_power(s, pa), 1e-6 * optimal_power(s));
    res.worst = std::max(res.worst, e);
    if (!(e <= rel_tol)) ++res.violations;
    ++res.instances;
  }
  res.passed = res.violations == 0;
  res.detail = fmt("max relative error %.3e", res.worst);
  return res;
}

CheckResult check_bisection_grid(std::uint64_t seed, int runs, int grid_points) {
  CheckResult res;
  res.name = "bisection grid oracle";
  constexpr double edge = 1e-9;
  long checked_points = 0;
  for (int run = 0; run < runs; ++run) {
    Rng rng = make_stream(seed, run, 4);
    const int m = uniform_int(rng, 2, 6);
    const Scenario s = random_scenario(rng, m);
    PhaseAssignment fixed = PhaseAssignment::all_active(random_phases(rng, m));
    const std::size_t adapting = static_cast<std::size_t>(m - 1);
    AdaptOptions opt;
    opt.intervals = uniform_int(rng, 1, 12);
    MeasurementModel exact;
    const AdaptResult ar = run_a1(s, fixed, adapting, opt, exact);
    const double target = phasor_target(s, fixed, adapting);

    bool ok = true;
    // Previous working set: the full circle before the first interval.
    double prev_center = 0.0;
    double prev_half = kPi;
    for (const auto& rec : ar.trace.records) {
      const double psi = rec.probes.psi;
      const double psi_p = rec.probes.psi_prime;
      const double center = rec.arc.center;
      const double half = rec.arc.half_width;
      if (half != prev_half / 2.0) ok = false;
      for (int k = 0; k < grid_points; ++k) {
        const double t = -kPi + 2.0 * kPi * k / grid_points;
        const double d_old = std::abs(wrapped_gap(t, prev_center));
        const bool in_old = prev_half >= kPi || d_old <= prev_half;
        const double d_new = std::abs(wrapped_gap(t, center));
        const bool in_new = d_new <= half;
        if (in_new && !in_old && std::abs(d_old - prev_half) > edge) ok = false;  // nesting
        if (!in_old) continue;
        const double diff = std::cos(t - psi) - std::cos(t - psi_p);
        if (std::abs(d_new - half) <= edge || std::abs(diff) <= 1e-12) continue;
        if (prev_half < kPi && std::abs(d_old - prev_half) <= edge) continue;
        ++checked_points;
        const bool closer_to_psi = diff > 0.0;
        if (in_new != (closer_to_psi == rec.bit.psi_wins)) ok = false;
      }
      if (std::abs(wrapped_gap(target, center)) > half + edge) ok = false;  // containment
      prev_center = center;
      prev_half = half;
    }
    if (!ok) ++res.violations;
    ++res.instances;
  }
  res.passed = res.violations == 0;
  res.worst = static_cast<double>(checked_points);
  res.detail = std::to_string(checked_points) + " grid memberships checked";
  return res;
}

CheckResult check_error_bound(std::uint64_t seed, int runs_per_n, int n_max) {
  CheckResult res;
  res.name = "single-stage error bound pi/2^N";
  double worst_ratio = 0.0;
  double prev_worst = kPi;
  bool monotone = true;
  for (int n = 1; n <= n_max; ++n) {
    double worst = 0.0;
    const double bound = kPi / std::ldexp(1.0, n);
    for (int i = 0; i < runs_per_n; ++i) {
      // Same instance set for every N.
      Rng rng = make_stream(seed, i, 5);
      const int m = uniform_int(rng, 2, 8);
      const Scenario s = random_scenario(rng, m);
      PhaseAssignment fixed = PhaseAssignment::all_active(random_phases(rng, m));
      const std::size_t adapting = static_cast<std::size_t>(m - 1);
      AdaptOptions opt;
      opt.intervals = n;
      MeasurementModel exact;
      const double phase = run_a1(s, fixed, adapting, opt, exact).phase;
      const double err = std::abs(wrapped_gap(phase, phasor_target(s, fixed, adapting)));
      worst = std::max(worst, err);
      if (err > bound + 1e-9) ++res.violations;
      ++res.instances;
    }
    worst_ratio = std::max(worst_ratio, worst / bound);
    if (worst > prev_worst + 1e-12) monotone = false;
    prev_worst = worst;
  }
  res.worst = worst_ratio;
  res.passed = res.violations == 0 && monotone;
  res.detail = fmt("worst error / bound = %.6f", worst_ratio) +
               (monotone ? "" : "; worst-case error increased with N");
  return res;
}

CheckResult check_efficiency_sandwich(std::uint64_t seed, int scenarios,
                                      const std::vector<int>& m_list, int n_max, double tol) {
  CheckResult res;
  res.name = "efficiency lower bound <= eta <= 1";
  ScenarioDistribution dist;
  double tightest = 1.0;
  for (int i = 0; i < scenarios; ++i) {
    for (int m : m_list) {
      dist.num_transmitters = m;
      Rng rng = make_stream(seed, i, 6 + static_cast<std::uint64_t>(m));
      const Scenario s = generate_scenario(dist, rng).scenario;
      for (int n = 1; n <= n_max; ++n) {
        MeasurementModel exact;
        ProtocolOptions opt;
        opt.intervals = n;
        const double eta = run_protocol(s, opt, exact).eta;
        const double lb = efficiency_lower_bound(s, n);
        tightest = std::min(tightest, eta - lb);
        if (eta < lb - tol || eta > 1.0 + tol) ++res.violations;
        ++res.instances;
      }
    }
  }
  res.worst = tightest;
  res.passed = res.violations == 0;
  res.detail = fmt("min(eta - bound) = %.3e", tightest);
  return res;
}

CheckResult check_induction(std::uint64_t seed, int instances, double tol) {
  CheckResult res;
  res.name = "recursive Q_d accumulation >= product-of-cosines bound";
  double min_slack = 1e300;
  double worst_m2 = 0.0;
  for (int i = 0; i < instances; ++i) {
    Rng rng = make_stream(seed, i, 7);
    const int m = uniform_int(rng, 2, 10);
    const int n = uniform_int(rng, 1, 6);
    const double eb = kPi / std::ldexp(1.0, n);
    const Scenario s = random_scenario(rng, m);
    std::vector<double> e(m, 0.0);
    for (int k = 1; k < m; ++k) e[k] = uniform(rng, -eb, eb);
    const InductionCheck c = check_induction_inequality(s, e, tol);
    double scale = 0.0;
    for (const auto& ch : s.channels) scale += ch.beta;
    min_slack = std::min(min_slack, c.slack / scale);
    if (!c.holds) ++res.violations;
    if (m == 2) {
      const double gap = std::abs(c.slack) / scale;
      worst_m2 = std::max(worst_m2, gap);
      if (gap > tol) ++res.violations;
    }
    ++res.instances;
  }
  res.worst = min_slack;
  res.passed = res.violations == 0;
  res.detail = fmt("min normalized slack %.3e", min_slack) +
               fmt(", max |slack| at M=2 %.3e", worst_m2);
  return res;
}

CheckResult check_corollary_values() {
  CheckResult res;
  res.name = "required N for equal gains, M=5";
  const Scenario s = equal_gain_scenario(5);
  const double n99 = required_intervals(s, 0.99).log2_bound;
  const double n999 = required_intervals(s, 0.999).log2_bound;
  res.instances = 2;
  if (!(std::abs(n99 - 4.8094) <= 1e-4)) ++res.violations;
  if (!(std::abs(n999 - 6.4731) <= 1e-4)) ++res.violations;
  res.worst = std::max(std::abs(n99 - 4.8094), std::abs(n999 - 6.4731));
  res.passed = res.violations == 0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "eta_hat=0.99 -> %.4f, eta_hat=0.999 -> %.4f", n99, n999);
  res.detail = buf;
  return res;
}

std::vector<CheckResult> run_suite(std::uint64_t seed, double scale) {
  auto n = [scale](int full) { return std::max(1, static_cast<int>(full * scale)); };
  return {
      check_corollary_values(),
      check_phasor_oracle(seed, n(10000), 32, 1e-10),
      check_partial_power(seed, n(10000), 32, 1e-10),
      check_time_domain(seed, n(2000), 32, 1e-10),
      check_bisection_grid(seed, n(200), 3600),
      check_error_bound(seed, n(1000), 10),
      check_efficiency_sandwich(seed, n(1000), {2, 5, 10}, 8, 1e-9),
      check_induction(seed, n(10000), 1e-9),
  };
}

}  // namespace dwet::verify
