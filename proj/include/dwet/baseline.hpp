#pragma once

#include <iosfwd>
#include <vector>

#include "dwet/angle.hpp"
#include "dwet/channel.hpp"
#include "dwet/power.hpp"
#include "dwet/rng.hpp"

namespace dwet {

// Random phase perturbation with one-bit "better than best so far" feedback.
// All transmitters jitter at once; the receiver keeps the record.

enum class PerturbationDistribution { uniform, gaussian };

struct PerturbationConfig {
  PerturbationDistribution distribution = PerturbationDistribution::uniform;
  double scale = pi / 8.0;  // half-range (uniform) or std (gaussian), radians
  int max_intervals = 300;

  void validate() const;
};

struct BaselineRecord {
  int n = 0;
  std::vector<double> candidate;
  double measured = 0.0;    // reading for the candidate phases
  double best_power = 0.0;  // true power of the committed phases after this interval
  bool accepted = false;
};

struct BaselineTrace {
  double initial_power = 0.0;  // all phases zero
  std::vector<BaselineRecord> records;
  std::vector<double> final_phases;
  double final_power = 0.0;

  /// best_power after each interval, index 0 = before any feedback.
  std::vector<double> best_power_curve() const;
};

BaselineTrace run_random_perturbation(const Scenario& s, const PerturbationConfig& cfg,
                                      MeasurementModel& meas, Rng& rng);

/// CSV: n,power,best_power,accepted (power is the candidate reading).
void write_baseline_csv(std::ostream& os, const BaselineTrace& trace);

}  // namespace dwet
