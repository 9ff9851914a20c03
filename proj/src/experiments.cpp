#include "dwet/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dwet/baseline.hpp"
#include "dwet/parallel.hpp"
#include "dwet/protocol.hpp"
#include "dwet/rng.hpp"

namespace dwet {

std::vector<ResultRow> ExperimentResult::curve(const std::string& name) const {
  std::vector<ResultRow> out;
  for (const auto& r : rows)
    if (r.curve == name) out.push_back(r);
  return out;
}

const ResultRow& ExperimentResult::at(const std::string& name, double x) const {
  for (const auto& r : rows)
    if (r.curve == name && r.x == x) return r;
  throw std::out_of_range("no row for curve '" + name + "' at " + std::to_string(x));
}

namespace {

// Slot (c, i) of a per-trial vector holds curve c at sweep point i.
struct Layout {
  std::vector<std::string> curves;
  std::vector<double> xs;

  std::size_t slots() const { return curves.size() * xs.size(); }
  std::size_t slot(std::size_t c, std::size_t i) const { return c * xs.size() + i; }
};

ExperimentResult aggregate(const ExperimentConfig& cfg, std::string x_name, const Layout& layout,
                           const std::vector<std::vector<double>>& per_trial) {
  ExperimentResult res;
  res.experiment = std::string(experiment_name(cfg.experiment));
  res.x_name = std::move(x_name);
  res.curves = layout.curves;
  res.seed = cfg.seed;
  res.trials = cfg.trials;
  res.config_hash = config_hash(cfg);
  res.config_text = to_text(cfg);

  const std::size_t n = per_trial.size();
  for (std::size_t c = 0; c < layout.curves.size(); ++c) {
    for (std::size_t i = 0; i < layout.xs.size(); ++i) {
      const std::size_t k = layout.slot(c, i);
      double sum = 0.0;
      for (const auto& t : per_trial) sum += t[k];
      const double mean = sum / static_cast<double>(n);
      double ss = 0.0;
      for (const auto& t : per_trial) ss += (t[k] - mean) * (t[k] - mean);
      ResultRow row;
      row.curve = layout.curves[c];
      row.x = layout.xs[i];
      row.mean = mean;
      row.stderr_mean = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
      row.samples = static_cast<int>(n);
      res.rows.push_back(std::move(row));
    }
  }
  return res;
}

ScenarioDistribution with_m(const ScenarioDistribution& d, int m) {
  ScenarioDistribution out = d;
  out.num_transmitters = m;
  return out;
}

Scenario prefix(const Scenario& s, std::size_t m) {
  Scenario out = s;
  out.channels.resize(m);
  return out;
}

std::vector<double> as_doubles(const std::vector<int>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

ExperimentResult exp_efficiency_vs_n(const ExperimentConfig& cfg) {
  cfg.validate();
  Layout layout;
  for (int m : cfg.m_list) layout.curves.push_back("eta_M" + std::to_string(m));
  for (int m : cfg.m_list) layout.curves.push_back("bound_M" + std::to_string(m));
  layout.xs = as_doubles(cfg.n_list);
  const std::size_t n_m = cfg.m_list.size();

  struct TrialOut {
    std::vector<double> values;
    int violations = 0;
  };
  auto trials = map_trials(cfg.trials, [&](int t) {
    TrialOut out;
    out.values.assign(layout.slots(), 0.0);
    for (std::size_t a = 0; a < n_m; ++a) {
      const int m = cfg.m_list[a];
      if (m < 2) throw std::invalid_argument("efficiency-vs-N needs M >= 2");
      Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(m));
      const Scenario s = generate_scenario(with_m(cfg.distribution, m), rng).scenario;
      for (std::size_t b = 0; b < cfg.n_list.size(); ++b) {
        MeasurementModel exact;
        ProtocolOptions opt;
        opt.intervals = cfg.n_list[b];
        const double eta = run_protocol(s, opt, exact).eta;
        const double bound = efficiency_lower_bound(s, cfg.n_list[b]);
        out.values[layout.slot(a, b)] = eta;
        out.values[layout.slot(n_m + a, b)] = bound;
        if (eta < bound - 1e-9) ++out.violations;
      }
    }
    return out;
  });

  std::vector<std::vector<double>> values;
  int violations = 0;
  values.reserve(trials.size());
  for (auto& t : trials) {
    violations += t.violations;
    values.push_back(std::move(t.values));
  }
  auto res = aggregate(cfg, "N", layout, values);
  res.bound_violations = violations;
  return res;
}

ExperimentResult exp_power_vs_m(const ExperimentConfig& cfg) {
  cfg.validate();
  Layout layout;
  for (int n : cfg.n_list) layout.curves.push_back("proposed_N" + std::to_string(n));
  layout.curves.push_back("no_adaptation");
  layout.curves.push_back("optimal");
  layout.xs = as_doubles(cfg.m_list);
  const int m_max = *std::max_element(cfg.m_list.begin(), cfg.m_list.end());
  const std::size_t n_n = cfg.n_list.size();

  auto values = map_trials(cfg.trials, [&](int t) {
    std::vector<double> v(layout.slots(), 0.0);
    Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(t));
    const Scenario full = generate_scenario(with_m(cfg.distribution, m_max), rng).scenario;
    for (std::size_t i = 0; i < cfg.m_list.size(); ++i) {
      const Scenario s = prefix(full, static_cast<std::size_t>(cfg.m_list[i]));
      for (std::size_t b = 0; b < n_n; ++b) {
        double q = s.power_scale() * s.channels[0].beta;
        if (s.size() >= 2) {
          MeasurementModel exact;
          ProtocolOptions opt;
          opt.intervals = cfg.n_list[b];
          q = run_protocol(s, opt, exact).q_d;
        }
        v[layout.slot(b, i)] = q;
      }
      v[layout.slot(n_n, i)] = unadapted_power(s);
      v[layout.slot(n_n + 1, i)] = optimal_power(s);
    }
    return v;
  });
  return aggregate(cfg, "M", layout, values);
}

ExperimentResult exp_convergence(const ExperimentConfig& cfg) {
  cfg.validate();
  Layout layout;
  for (int m : cfg.m_list) {
    layout.curves.push_back("proposed_M" + std::to_string(m));
    layout.curves.push_back("baseline_M" + std::to_string(m));
    layout.curves.push_back("optimal_M" + std::to_string(m));
  }
  for (int k = 0; k <= cfg.horizon; ++k) layout.xs.push_back(k);
  const std::size_t h = static_cast<std::size_t>(cfg.horizon);

  auto values = map_trials(cfg.trials, [&](int t) {
    std::vector<double> v(layout.slots(), 0.0);
    for (std::size_t a = 0; a < cfg.m_list.size(); ++a) {
      const int m = cfg.m_list[a];
      if (m < 2) throw std::invalid_argument("convergence-comparison needs M >= 2");
      Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(m));
      const Scenario s = generate_scenario(with_m(cfg.distribution, m), rng).scenario;

      MeasurementModel exact;
      ProtocolOptions opt;
      opt.intervals = cfg.protocol_intervals;
      const ProtocolResult pr = run_protocol(s, opt, exact);
      const auto committed = committed_power_trajectory(pr, s);
      const std::size_t pc = 3 * a;
      v[layout.slot(pc, 0)] = s.power_scale() * s.channels[0].beta;
      for (std::size_t k = 1; k <= h; ++k)
        v[layout.slot(pc, k)] = k <= committed.size() ? committed[k - 1] : pr.q_d;

      PerturbationConfig pcfg;
      pcfg.scale = cfg.perturbation_scale;
      pcfg.max_intervals = cfg.horizon;
      Rng brng = make_stream(cfg.seed, static_cast<std::uint64_t>(t),
                             0x62617365ULL + static_cast<std::uint64_t>(m));
      MeasurementModel bexact;
      const auto curve = run_random_perturbation(s, pcfg, bexact, brng).best_power_curve();
      for (std::size_t k = 0; k <= h; ++k) v[layout.slot(pc + 1, k)] = curve[k];

      const double q_star = optimal_power(s);
      for (std::size_t k = 0; k <= h; ++k) v[layout.slot(pc + 2, k)] = q_star;
    }
    return v;
  });
  auto res = aggregate(cfg, "interval", layout, values);
  // Proposed scheme spends two probe transmissions per feedback bit, the baseline one.
  for (auto& row : res.rows) {
    const long k = static_cast<long>(row.x);
    if (row.curve.rfind("proposed_", 0) == 0) row.probes = 2 * k;
    else if (row.curve.rfind("baseline_", 0) == 0) row.probes = k;
  }
  return res;
}

namespace {

struct PolicyTrajectory {
  std::vector<double> training;  // per-interval power while training
  double steady = 0.0;           // power once training is over
};

PolicyTrajectory adapted_policy(const Scenario& sorted, std::size_t on, int n) {
  const Scenario s = prefix(sorted, on);
  PolicyTrajectory p;
  if (on < 2) {
    p.steady = s.power_scale() * s.channels[0].beta;
    return p;
  }
  MeasurementModel exact;
  ProtocolOptions opt;
  opt.intervals = n;
  const ProtocolResult r = run_protocol(s, opt, exact);
  p.training = training_interval_powers(r);
  p.steady = r.q_d;
  return p;
}

double average_over_budget(const PolicyTrajectory& p, int budget) {
  const std::size_t b = static_cast<std::size_t>(budget);
  const std::size_t train = std::min(b, p.training.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < train; ++k) sum += p.training[k];
  sum += static_cast<double>(b - train) * p.steady;
  return sum / static_cast<double>(b);
}

}  // namespace

ExperimentResult exp_overhead_tradeoff(const ExperimentConfig& cfg) {
  cfg.validate();
  const int m = cfg.m_list.front();
  if (m < 3) throw std::invalid_argument("overhead-tradeoff needs M >= 3");
  Layout layout;
  layout.curves = {"all_on", "drop_weakest", "drop_two_weakest", "no_adaptation", "optimal"};
  layout.xs = as_doubles(cfg.budgets);

  auto values = map_trials(cfg.trials, [&](int t) {
    std::vector<double> v(layout.slots(), 0.0);
    Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(m));
    Scenario s = generate_scenario(with_m(cfg.distribution, m), rng).scenario;
    std::stable_sort(s.channels.begin(), s.channels.end(),
                     [](const Channel& a, const Channel& b) { return a.beta > b.beta; });
    const std::size_t mm = s.size();
    const PolicyTrajectory policies[] = {
        adapted_policy(s, mm, cfg.protocol_intervals),
        adapted_policy(s, mm - 1, cfg.protocol_intervals),
        adapted_policy(s, mm - 2, cfg.protocol_intervals),
        PolicyTrajectory{{}, unadapted_power(s)},
        PolicyTrajectory{{}, optimal_power(s)},
    };
    for (std::size_t c = 0; c < 5; ++c)
      for (std::size_t i = 0; i < cfg.budgets.size(); ++i)
        v[layout.slot(c, i)] = average_over_budget(policies[c], cfg.budgets[i]);
    return v;
  });
  return aggregate(cfg, "budget", layout, values);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case ExperimentKind::efficiency_vs_n: return exp_efficiency_vs_n(cfg);
    case ExperimentKind::power_vs_m: return exp_power_vs_m(cfg);
    case ExperimentKind::convergence: return exp_convergence(cfg);
    case ExperimentKind::overhead_tradeoff: return exp_overhead_tradeoff(cfg);
  }
  throw std::invalid_argument("unknown experiment");
}

}  // namespace dwet
