#include "dwet/baseline.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "dwet/angle.hpp"

namespace dwet {

void PerturbationConfig::validate() const {
  if (!(scale >= 0.0)) throw std::invalid_argument("perturbation scale must be >= 0");
  if (max_intervals < 1) throw std::invalid_argument("perturbation needs at least one interval");
}

std::vector<double> BaselineTrace::best_power_curve() const {
  std::vector<double> out;
  out.reserve(records.size() + 1);
  out.push_back(initial_power);
  for (const auto& r : records) out.push_back(r.best_power);
  return out;
}

BaselineTrace run_random_perturbation(const Scenario& s, const PerturbationConfig& cfg,
                                      MeasurementModel& meas, Rng& rng) {
  s.validate();
  cfg.validate();
  const std::size_t m = s.size();

  PhaseAssignment best = PhaseAssignment::zeros(m);
  double best_true = harvested_power(s, best);
  double best_reading = meas.measure(best_true);

  BaselineTrace trace;
  trace.initial_power = best_true;
  trace.records.reserve(cfg.max_intervals);

  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::normal_distribution<double> gaussian(0.0, 1.0);
  PhaseAssignment cand = best;
  for (int n = 1; n <= cfg.max_intervals; ++n) {
    for (std::size_t i = 0; i < m; ++i) {
      const double u = cfg.distribution == PerturbationDistribution::uniform ? uniform(rng)
                                                                              : gaussian(rng);
      cand.phases[i] = normalize_angle(best.phases[i] + cfg.scale * u);
    }
    const double cand_true = harvested_power(s, cand);
    BaselineRecord rec;
    rec.n = n;
    rec.candidate = cand.phases;
    rec.measured = meas.measure(cand_true);
    rec.accepted = rec.measured > best_reading;
    if (rec.accepted) {
      best = cand;
      best_true = cand_true;
      best_reading = rec.measured;
    }
    rec.best_power = best_true;
    trace.records.push_back(std::move(rec));
  }
  trace.final_phases = best.phases;
  trace.final_power = best_true;
  return trace;
}

void write_baseline_csv(std::ostream& os, const BaselineTrace& trace) {
  os << "n,power,best_power,accepted\n";
  char buf[128];
  for (const auto& r : trace.records) {
    std::snprintf(buf, sizeof buf, "%d,%.15g,%.15g,%d\n", r.n, r.measured, r.best_power,
                  r.accepted ? 1 : 0);
    os << buf;
  }
}

}  // namespace dwet
