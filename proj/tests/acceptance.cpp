// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <dwet/adapt.hpp>
#include <dwet/angle.hpp>
#include <dwet/baseline.hpp>
#include <dwet/channel.hpp>
#include <dwet/config.hpp>
#include <dwet/experiments.hpp>
#include <dwet/power.hpp>
#include <dwet/protocol.hpp>
#include <dwet/rng.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace dwet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Gains spread over six decades so both path-loss-sized and unit-sized
// channels are covered.
Scenario random_scenario(Rng& rng, int m) {
  Scenario s;
  for (int i = 0; i < m; ++i)
    s.channels.push_back({std::pow(10.0, uniform(rng, -6.0, 0.0)), uniform(rng, -pi, pi)});
  return s;
}

std::complex<double> phasor_sum(const Scenario& s, const std::vector<double>& phi,
                                const std::vector<bool>& on) {
  std::complex<double> z = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (on[i]) z += std::polar(std::sqrt(s.channels[i].beta), phi[i] - s.channels[i].theta);
  return z;
}

double oracle_power(const Scenario& s, const std::vector<double>& phi, const std::vector<bool>& on) {
  return s.power_scale() * std::norm(phasor_sum(s, phi, on));
}

double oracle_q_star(const Scenario& s) {
  double a = 0.0;
  for (const auto& c : s.channels) a += std::sqrt(c.beta);
  return s.power_scale() * a * a;
}

double oracle_bound(const Scenario& s, int n) {
  double sum_b = 0.0, sum_r = 0.0;
  for (const auto& c : s.channels) {
    sum_b += c.beta;
    sum_r += std::sqrt(c.beta);
  }
  const double cross = sum_r * sum_r - sum_b;
  const double c = std::cos(pi / std::ldexp(1.0, n));
  return (sum_b + cross * c * c) / (sum_b + cross);
}

// Alignment target of transmitter m against the others in `phi`.
double oracle_target(const Scenario& s, const std::vector<double>& phi, std::size_t m) {
  std::vector<bool> on(s.size(), true);
  on[m] = false;
  return normalize_angle(s.channels[m].theta + std::arg(phasor_sum(s, phi, on)));
}

bool in_arc(const Arc& a, double t, double slack) {
  return a.half_width >= pi || circular_distance(t, a.center) <= a.half_width + slack;
}

// 1. Corollary values
Outcome corollary() {
  const auto a = required_intervals_equal_gain(5, 0.99);
  const auto b = required_intervals_equal_gain(5, 0.999);
  const bool ok = a.status == IntervalRequirement::Status::ok &&
                  b.status == IntervalRequirement::Status::ok &&
                  std::abs(a.log2_bound - 4.8094) <= 1e-4 && std::abs(b.log2_bound - 6.4731) <= 1e-4;
  return {ok, fmt("N(0.99)=%.6f N(0.999)=%.6f", a.log2_bound, b.log2_bound)};
}

// 2. Single-stage error bound
Outcome error_bound() {
  long violations = 0;
  std::string worst;
  for (int n = 1; n <= 10; ++n) {
    Rng rng = make_stream(2002, static_cast<std::uint64_t>(n));
    double max_err = 0.0;
    for (int run = 0; run < 1000; ++run) {
      const int m = uniform_int(rng, 2, 8);
      const Scenario s = random_scenario(rng, m);
      std::vector<double> phi(m);
      for (auto& p : phi) p = uniform(rng, -pi, pi);
      const std::size_t k = static_cast<std::size_t>(m - 1);
      MeasurementModel exact;
      AdaptOptions opt;
      opt.intervals = n;
      const auto r = run_a1(s, PhaseAssignment::all_active(phi), k, opt, exact);
      const double err = circular_distance(r.phase, oracle_target(s, phi, k));
      max_err = std::max(max_err, err);
      if (err > pi / std::ldexp(1.0, n) + 1e-9) ++violations;
    }
    worst += fmt(" N%d:%.3g", n, max_err);
  }
  return {violations == 0, fmt("violations=%ld max_err", violations) + worst};
}

// 3. Efficiency sandwich
Outcome sandwich() {
  long violations = 0, instances = 0;
  double worst_gap = 1.0;
  for (int m : {2, 5, 10}) {
    Rng rng = make_stream(3003, static_cast<std::uint64_t>(m));
    ScenarioDistribution dist;
    dist.num_transmitters = m;
    for (int t = 0; t < 1000; ++t) {
      const Scenario s = generate_scenario(dist, rng).scenario;
      for (int n = 1; n <= 8; ++n) {
        MeasurementModel exact;
        ProtocolOptions opt;
        opt.intervals = n;
        const auto r = run_protocol(s, opt, exact);
        const double eta =
            oracle_power(s, r.phases, std::vector<bool>(s.size(), true)) / oracle_q_star(s);
        const double bound = oracle_bound(s, n);
        ++instances;
        worst_gap = std::min(worst_gap, eta - bound);
        if (bound > eta + 1e-9 || eta > 1.0 + 1e-9 ||
            std::abs(efficiency_lower_bound(s, n) - bound) > 1e-12)
          ++violations;
      }
    }
  }
  return {violations == 0,
          fmt("instances=%ld violations=%ld min(eta-bound)=%.3g", instances, violations, worst_gap)};
}

// 4. Efficiency versus N
Outcome efficiency_vs_n() {
  auto cfg = ExperimentConfig::defaults(ExperimentKind::efficiency_vs_n);
  cfg.trials = 1000;
  cfg.m_list = {5, 10};
  cfg.n_list = {1, 2, 3, 4, 5, 6, 7, 8};
  const auto res = run_experiment(cfg);
  bool ok = true;
  std::string detail;
  for (int m : cfg.m_list) {
    const std::string eta = "eta_M" + std::to_string(m), bound = "bound_M" + std::to_string(m);
    const double e4 = res.at(eta, 4).mean, e8 = res.at(eta, 8).mean;
    ok = ok && e4 > 0.95 && e8 > 0.999;
    for (int n : cfg.n_list) ok = ok && res.at(bound, n).mean <= res.at(eta, n).mean;
    detail += fmt("M=%d eta(4)=%.5f eta(8)=%.6f ", m, e4, e8);
  }
  return {ok, detail + (ok ? "bound below eta at every N" : "")};
}

// 5. Phasor oracle
Outcome phasor_oracle() {
  Rng rng = make_stream(5005, 0);
  long bad_power = 0, bad_partial = 0;
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const int m = uniform_int(rng, 1, 32);
    const Scenario s = random_scenario(rng, m);
    std::vector<double> phi(m);
    std::vector<bool> on(m);
    for (int i = 0; i < m; ++i) {
      phi[i] = uniform(rng, -pi, pi);
      on[i] = uniform(rng, 0.0, 1.0) < 0.8;
    }
    PhaseAssignment pa{phi, on};
    double scale = 0.0;
    for (int i = 0; i < m; ++i)
      if (on[i]) scale += std::sqrt(s.channels[i].beta);
    const double floor = 1e-6 * s.power_scale() * scale * scale;

    const double want = oracle_power(s, phi, on);
    const double rel = std::abs(harvested_power(s, pa) - want) / std::max(want, floor);
    worst = std::max(worst, rel);
    if (rel > 1e-10) ++bad_power;

    // One transmitter joins the rest through partial_power.
    const std::size_t k = static_cast<std::size_t>(uniform_int(rng, 0, m - 1));
    std::vector<bool> others = on;
    others[k] = false;
    const auto z = phasor_sum(s, phi, others);
    const SumSignal ss{std::norm(z), std::arg(z)};
    std::vector<bool> with_k = others;
    with_k[k] = true;
    PhaseAssignment joined{phi, with_k};
    const double full = harvested_power(s, joined);
    const double rel_p = std::abs(partial_power(s, ss, k, phi[k]) - full) / std::max(full, floor);
    worst = std::max(worst, rel_p);
    if (rel_p > 1e-10) ++bad_partial;
  }
  return {bad_power == 0 && bad_partial == 0,
          fmt("power violations=%ld partial violations=%ld worst rel=%.3g", bad_power, bad_partial,
              worst)};
}

// 6. Bisection grid oracle
Outcome bisection_grid() {
  constexpr int grid = 3600;
  Rng rng = make_stream(6006, 0);
  long bad_class = 0, bad_nest = 0, lost_target = 0, checked = 0;
  for (int run = 0; run < 200; ++run) {
    const int m = uniform_int(rng, 2, 8);
    const Scenario s = random_scenario(rng, m);
    std::vector<double> phi(m);
    for (auto& p : phi) p = uniform(rng, -pi, pi);
    const std::size_t k = static_cast<std::size_t>(m - 1);
    const double target = oracle_target(s, phi, k);
    MeasurementModel exact;
    AdaptOptions opt;
    opt.intervals = 12;
    const auto r = run_a1(s, PhaseAssignment::all_active(phi), k, opt, exact);

    Arc prev = initial_arc();
    for (const auto& rec : r.trace.records) {
      const Arc& next = rec.arc;
      const double win = rec.bit.psi_wins ? rec.probes.psi : rec.probes.psi_prime;
      const double lose = rec.bit.psi_wins ? rec.probes.psi_prime : rec.probes.psi;
      for (int g = 0; g < grid; ++g) {
        const double t = -pi + two_pi * g / grid;
        if (!in_arc(prev, t, 1e-12)) continue;
        ++checked;
        const double d = std::cos(win - t) - std::cos(lose - t);
        if (in_arc(next, t, 1e-12) ? d < -1e-9 : d > 1e-9) ++bad_class;
      }
      const bool halved = next.half_width == prev.half_width / 2.0;
      const bool nested = prev.half_width >= pi ||
                          circular_distance(next.center, prev.center) + next.half_width <=
                              prev.half_width + 1e-12;
      if (!halved || !nested) ++bad_nest;
      if (!in_arc(next, target, 1e-9)) ++lost_target;
      prev = next;
    }
  }
  return {bad_class == 0 && bad_nest == 0 && lost_target == 0,
          fmt("grid checks=%ld misclassified=%ld nesting/halving failures=%ld target lost=%ld",
              checked, bad_class, bad_nest, lost_target)};
}

// 7. Induction inequality
Outcome induction() {
  Rng rng = make_stream(7007, 0);
  long violations = 0, m2_off = 0;
  double min_slack = 1e300;
  for (int t = 0; t < 10000; ++t) {
    const int m = t < 1000 ? 2 : uniform_int(rng, 2, 12);
    Scenario s = random_scenario(rng, m);
    double total = 0.0;
    for (const auto& c : s.channels) total += c.beta;
    for (auto& c : s.channels) c.beta /= total;
    std::vector<double> e(m, 0.0);
    for (int i = 1; i < m; ++i) e[i] = uniform(rng, -pi / 2, pi / 2);

    double q = s.channels[0].beta;
    for (int i = 1; i < m; ++i) {
      const double b = s.channels[i].beta;
      q = b + q + 2.0 * std::cos(e[i]) * std::sqrt(b * q);
    }
    double rhs = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double bij = std::sqrt(s.channels[i].beta * s.channels[j].beta);
        rhs += i == j ? s.channels[i].beta : bij * std::cos(e[i]) * std::cos(e[j]);
      }
    const double slack = q - rhs;
    min_slack = std::min(min_slack, slack);
    const auto lib = check_induction_inequality(s, e);
    if (slack < -1e-9 || !lib.holds || std::abs(lib.slack - slack) > 1e-12) ++violations;
    if (m == 2 && std::abs(slack) > 1e-9) ++m2_off;
  }
  return {violations == 0 && m2_off == 0,
          fmt("violations=%ld M=2 inequalities=%ld min slack=%.3g", violations, m2_off, min_slack)};
}

// 8. Convergence comparison
Outcome convergence() {
  bool ok = true;
  std::string detail;
  for (int m : {5, 7}) {
    auto cfg = ExperimentConfig::defaults(ExperimentKind::convergence);
    cfg.m_list = {m};
    cfg.trials = 1;
    int slow = 0;
    for (int seed = 1; seed <= 100; ++seed) {
      cfg.seed = static_cast<std::uint64_t>(seed);
      const auto res = run_experiment(cfg);
      const std::string b = "baseline_M" + std::to_string(m);
      if (res.at(b, 100).mean < 0.99 * res.at(b, cfg.horizon).mean) ++slow;
    }

    Rng rng = make_stream(8008, static_cast<std::uint64_t>(m));
    ScenarioDistribution dist;
    dist.num_transmitters = m;
    const Scenario s = generate_scenario(dist, rng).scenario;
    MeasurementModel exact;
    const auto r = run_protocol(s, ProtocolOptions{}, exact);
    const auto committed = committed_power_trajectory(r, s);
    const int expect = 5 * (m - 1);
    const bool done = r.total_feedback_intervals == expect &&
                      static_cast<int>(committed.size()) == expect &&
                      std::abs(committed.back() - r.q_d) <= 1e-12 * r.q_d;
    const bool above = r.eta >= oracle_bound(s, 5) - 1e-12;
    ok = ok && done && above && slow >= 80;
    detail += fmt("M=%d training=%d [%s] eta=%.5f bound=%.5f [%s] baseline below 99%% at 100 "
                  "in %d/100 seeds [%s]; ",
                  m, r.total_feedback_intervals, done ? "ok" : "fail", r.eta, oracle_bound(s, 5),
                  above ? "ok" : "fail", slow, slow >= 80 ? "ok" : "fail");
  }
  return {ok, detail};
}

// 9. Overhead tradeoff
Outcome overhead() {
  auto cfg = ExperimentConfig::defaults(ExperimentKind::overhead_tradeoff);
  cfg.trials = 2000;
  cfg.budgets = {25, 50, 300};
  const auto res = run_experiment(cfg);
  auto v = [&](const char* c, int b) { return res.at(c, b).mean; };
  const bool c25 = v("no_adaptation", 25) >= v("all_on", 25);
  const bool c50 = std::max(v("drop_weakest", 50), v("drop_two_weakest", 50)) >= v("all_on", 50);
  bool c300 = true;
  for (const char* c : {"drop_weakest", "drop_two_weakest", "no_adaptation"})
    c300 = c300 && v("all_on", 300) >= v(c, 300);
  const double ratio = v("all_on", 300) / v("optimal", 300);
  c300 = c300 && ratio >= 0.98;
  return {c25 && c50 && c300,
          fmt("B=25 no_adapt/all_on=%.3f [%s]; B=50 best_drop/all_on=%.3f [%s]; "
              "B=300 all_on/Q*=%.4f [%s]",
              v("no_adaptation", 25) / v("all_on", 25), c25 ? "ok" : "fail",
              std::max(v("drop_weakest", 50), v("drop_two_weakest", 50)) / v("all_on", 50),
              c50 ? "ok" : "fail", ratio, c300 ? "ok" : "fail")};
}

// 10. CLI determinism
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string drop_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) out += line + '\n';
  return out;
}

// stdout plus every file written under the output directory.
std::map<std::string, std::string> run_cli(const std::string& args, int threads, int& status) {
  const fs::path out = fs::temp_directory_path() / "dwet_acceptance_out";
  fs::remove_all(out);
  const std::string cmd = std::string(DWET_CLI_PATH) + " --seed 11 --threads " +
                          std::to_string(threads) + " --out " + out.string() + " " + args +
                          " 2>/dev/null";
  std::map<std::string, std::string> got;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::array<char, 4096> buf;
  std::string text;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
  status = pclose(pipe);
  got["<stdout>"] = text;
  if (fs::exists(out))
    for (const auto& entry : fs::recursive_directory_iterator(out))
      if (entry.is_regular_file()) {
        const std::string rel = fs::relative(entry.path(), out).string();
        const std::string body = slurp(entry.path());
        got[rel] = entry.path().filename() == "metadata.json" ? drop_timestamp(body) : body;
      }
  return got;
}

Outcome determinism() {
  const std::vector<std::string> commands = {
      "adapt --M 4 --N 6",
      "adapt --M 3 --N 5 --noise-std 1e-6",
      "protocol --M 6 --N 4",
      "protocol --M 5 --N 5 --noise-std 1e-6 --traces",
      "baseline --intervals 200",
      "baseline --intervals 100 --gaussian --noise-std 1e-6",
      "scenario",
      "bound --M 5 --N 4",
      "verify --scale 0.02",
      "--trials 200 exp efficiency-vs-N",
      "exp power-vs-M",
      "exp convergence-comparison",
      "--trials 300 exp overhead-tradeoff",
      "--format json --trials 50 exp efficiency-vs-N",
  };
  int mismatched = 0, failed_runs = 0;
  std::string which;
  for (const auto& c : commands) {
    int s1 = 0, s2 = 0, s3 = 0;
    const auto a = run_cli(c, 1, s1);
    const auto b = run_cli(c, 1, s2);
    const auto p = run_cli(c, 4, s3);
    if (s1 != 0 || s2 != 0 || s3 != 0) ++failed_runs;
    if (a != b || a != p || a.at("<stdout>").empty()) {
      ++mismatched;
      which += " [" + c + "]";
    }
  }
  return {mismatched == 0 && failed_runs == 0,
          fmt("commands=%zu mismatched=%d nonzero exits=%d", commands.size(), mismatched,
              failed_runs) +
              which};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"corollary values", corollary},
      {"single-stage error bound", error_bound},
      {"efficiency sandwich", sandwich},
      {"efficiency versus N", efficiency_vs_n},
      {"phasor oracle", phasor_oracle},
      {"bisection grid oracle", bisection_grid},
      {"induction inequality", induction},
      {"convergence comparison", convergence},
      {"overhead tradeoff", overhead},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
