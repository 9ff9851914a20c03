#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dwet/channel.hpp"
#include "dwet/power.hpp"

namespace dwet {

/// Circular working set {center + t : |t| <= half_width} (mod 2 pi).
struct Arc {
  double center = 0.0;
  double half_width = 0.0;

  bool is_full_circle() const;
  /// Closed-set membership with an absolute slack in radians.
  bool contains(double angle, double slack = 0.0) const;
};

/// The two phases transmitted in one feedback interval.
struct ProbePair {
  double psi = 0.0;
  double psi_prime = 0.0;
};

/// One bit from the receiver: true iff Q(psi) beat Q(psi') (ties count as true).
struct FeedbackBit {
  bool psi_wins = true;
};

/// Full circle whose first probes are psi = 0 and psi' = -pi.
Arc initial_arc(double frame_offset = 0.0);

/// Probes for an arc. Sub-circle arcs are probed at their two boundaries; the
/// full circle has coincident boundaries, so it is probed at center +/- pi/2,
/// which yields the (0, -pi) pair for the initial arc.
ProbePair probes_for(const Arc& arc);

/// Keeps the half of `arc` closer to the winning probe. Every point in the
/// returned arc satisfies the winning side of cos(t - psi) vs cos(t - psi').
Arc bisect(const Arc& arc, FeedbackBit bit);

/// Receiver-side comparison. Only the bit crosses back to the transmitter.
FeedbackBit compare_powers(double q_psi, double q_psi_prime);

struct TrainingRecord {
  int n = 0;  // 1-based interval index
  ProbePair probes;
  double q_psi = 0.0;
  double q_psi_prime = 0.0;
  // Noise-free received powers for each probe, for energy accounting.
  double true_q_psi = 0.0;
  double true_q_psi_prime = 0.0;
  FeedbackBit bit;
  Arc arc;  // working set after this interval
};

struct TrainingTrace {
  std::vector<TrainingRecord> records;
  double final_phase = 0.0;
};

struct AdaptOptions {
  int intervals = 5;
  // Readings averaged per probe; 1 matches the one-reading-per-probe protocol.
  int probe_repeats = 1;
  // Half-widths below this are treated as converged and left unsplit.
  double min_half_width = 1e-12;
  // Rotates the whole search (initial arc and probes) by this angle.
  double frame_offset = 0.0;
};

struct AdaptResult {
  double phase = 0.0;
  double target = 0.0;  // theta_m + varphi at adaptation time
  SumSignal sum;  // signal the transmitter aligned to
  TrainingTrace trace;
};

/// Runs the one-bit bisection for transmitter m against the active
/// transmitters in `fixed` (m itself is ignored in `fixed`).
AdaptResult run_a1(const Scenario& s, const PhaseAssignment& fixed, std::size_t m,
                   const AdaptOptions& opt, MeasurementModel& meas);

/// CSV: n,psi,psi_prime,q_psi,q_psi_prime,bit,arc_center,arc_half_width
void write_trace_csv(std::ostream& os, const TrainingTrace& trace);

}  // namespace dwet
