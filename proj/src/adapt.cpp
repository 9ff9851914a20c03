#include "dwet/adapt.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "dwet/angle.hpp"

namespace dwet {

bool Arc::is_full_circle() const { return half_width >= pi; }

bool Arc::contains(double angle, double slack) const {
  return is_full_circle() || circular_distance(angle, center) <= half_width + slack;
}

Arc initial_arc(double frame_offset) {
  return Arc{normalize_angle(-pi / 2.0 + frame_offset), pi};
}

ProbePair probes_for(const Arc& arc) {
  const double offset = arc.is_full_circle() ? pi / 2.0 : arc.half_width;
  return {normalize_angle(arc.center + offset), normalize_angle(arc.center - offset)};
}

// The perpendicular bisector of a probe pair placed symmetrically about the
// center passes through the center, so either half is (center +/- h/2, h/2).
Arc bisect(const Arc& arc, FeedbackBit bit) {
  const double h = arc.half_width / 2.0;
  const double c = bit.psi_wins ? arc.center + h : arc.center - h;
  return Arc{normalize_angle(c), h};
}

FeedbackBit compare_powers(double q_psi, double q_psi_prime) {
  return FeedbackBit{!(q_psi < q_psi_prime)};
}

namespace {

double read_power(MeasurementModel& meas, double true_power, int repeats) {
  if (repeats == 1) return meas.measure(true_power);
  double acc = 0.0;
  for (int r = 0; r < repeats; ++r) acc += meas.measure(true_power);
  return acc / repeats;
}

}  // namespace

AdaptResult run_a1(const Scenario& s, const PhaseAssignment& fixed, std::size_t m,
                   const AdaptOptions& opt, MeasurementModel& meas) {
  if (opt.intervals < 1) throw std::invalid_argument("run_a1: need at least one interval");
  if (opt.probe_repeats < 1) throw std::invalid_argument("run_a1: probe_repeats must be >= 1");
  if (m >= s.size()) throw std::out_of_range("run_a1: transmitter index out of range");

  const SumSignal ss = sum_signal(s, fixed, m);
  AdaptResult res;
  res.sum = ss;
  res.target = aligned_phase(s, ss, m);
  res.trace.records.reserve(opt.intervals);

  Arc arc = initial_arc(opt.frame_offset);
  for (int n = 1; n <= opt.intervals; ++n) {
    TrainingRecord rec;
    rec.n = n;
    rec.probes = probes_for(arc);
    rec.true_q_psi = partial_power(s, ss, m, rec.probes.psi);
    rec.true_q_psi_prime = partial_power(s, ss, m, rec.probes.psi_prime);
    rec.q_psi = read_power(meas, rec.true_q_psi, opt.probe_repeats);
    rec.q_psi_prime = read_power(meas, rec.true_q_psi_prime, opt.probe_repeats);
    rec.bit = compare_powers(rec.q_psi, rec.q_psi_prime);
    if (arc.half_width / 2.0 >= opt.min_half_width) arc = bisect(arc, rec.bit);
    rec.arc = arc;
    res.trace.records.push_back(rec);
  }
  res.phase = normalize_angle(arc.center);
  res.trace.final_phase = res.phase;
  return res;
}

void write_trace_csv(std::ostream& os, const TrainingTrace& trace) {
  os << "n,psi,psi_prime,q_psi,q_psi_prime,bit,arc_center,arc_half_width\n";
  char buf[256];
  for (const auto& r : trace.records) {
    std::snprintf(buf, sizeof buf, "%d,%.15g,%.15g,%.15g,%.15g,%d,%.15g,%.15g\n", r.n,
                  r.probes.psi, r.probes.psi_prime, r.q_psi, r.q_psi_prime,
                  r.bit.psi_wins ? 1 : 0, r.arc.center, r.arc.half_width);
    os << buf;
  }
}

}  // namespace dwet
