#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dwet/adapt.hpp"
#include "dwet/channel.hpp"
#include "dwet/power.hpp"

namespace dwet {

struct ProtocolOptions {
  int intervals = 5;  // N, feedback intervals per adapting transmitter
  int probe_repeats = 1;
  // Phase of the reference transmitter; any value gives the same received power.
  double first_phase = 0.0;
};

/// One adapting transmitter's stage of the sequential protocol.
struct Stage {
  std::size_t transmitter = 0;
  AdaptResult adapt;
  double error = 0.0;  // phase - target, normalized
};

struct ProtocolResult {
  std::vector<double> phases;
  std::vector<Stage> stages;  // transmitters 2..M in order
  double q_d = 0.0;
  double q_star = 0.0;
  double eta = 0.0;
  int intervals_per_transmitter = 0;
  int total_feedback_intervals = 0;

  /// Per-transmitter errors recorded during the run; entry 0 is zero.
  std::vector<double> errors() const;
  double max_abs_error() const;
};

/// Start signal: transmitter 1 holds `first_phase`, then transmitters 2..M
/// each run the bisection against everything already fixed and keep the
/// result. Consumes N (M - 1) feedback intervals.
ProtocolResult run_protocol(const Scenario& s, const ProtocolOptions& opt,
                            MeasurementModel& meas);

/// Recomputes each stage's error from the final phases alone.
std::vector<double> phase_errors(const ProtocolResult& result, const Scenario& s);

/// Closed-form lower bound on Q_d / Q* after N intervals per transmitter.
double efficiency_lower_bound(const Scenario& s, int intervals);

struct IntervalRequirement {
  enum class Status {
    ok,
    radicand_negative,     // target efficiency below what the formula covers
    radicand_above_one,    // target efficiency above one
    no_cross_terms,        // single transmitter: any N achieves eta = 1
  };
  Status status = Status::ok;
  double log2_bound = 0.0;  // real-valued lower bound on N when status == ok

  bool feasible() const { return status == Status::ok || status == Status::no_cross_terms; }
  /// Smallest integer N meeting the bound (at least 1).
  int min_intervals() const;
};

/// Smallest real N for which the efficiency lower bound reaches eta_hat.
IntervalRequirement required_intervals(const Scenario& s, double eta_hat);

/// The same bound specialized to M equal gains.
IntervalRequirement required_intervals_equal_gain(int num_transmitters, double eta_hat);

struct InductionCheck {
  bool holds = false;
  double recursive_q = 0.0;  // accumulated Q_d (beta-normalized)
  double rhs = 0.0;
  double slack = 0.0;  // recursive_q - rhs
};

/// Accumulates Q_d one transmitter at a time from per-transmitter errors
/// (errors[0] is the reference and ignored by the recursion) and compares
/// with sum beta + sum_{i != j} sqrt(beta_i beta_j) cos(e_i) cos(e_j).
InductionCheck check_induction_inequality(const Scenario& s, const std::vector<double>& errors,
                                          double tolerance = 1e-9);

/// Received power during each feedback interval (mean of the two probe
/// readings, noise-free), in protocol order.
std::vector<double> training_interval_powers(const ProtocolResult& r);

/// Received power after each feedback interval with the adapting transmitter
/// parked at its current working-set center. Ends at q_d.
std::vector<double> committed_power_trajectory(const ProtocolResult& r, const Scenario& s);

/// Header plus one row: M,N,Q_d,Q_star,eta,bound,max_abs_error
void write_protocol_summary_csv(std::ostream& os, const Scenario& s, const ProtocolResult& r,
                                bool header = true);

}  // namespace dwet
