#include "dwet/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "dwet/angle.hpp"

namespace dwet {

std::vector<double> ProtocolResult::errors() const {
  std::vector<double> e(phases.size(), 0.0);
  for (const auto& st : stages) e[st.transmitter] = st.error;
  return e;
}

double ProtocolResult::max_abs_error() const {
  double worst = 0.0;
  for (const auto& st : stages) worst = std::max(worst, std::abs(st.error));
  return worst;
}

ProtocolResult run_protocol(const Scenario& s, const ProtocolOptions& opt,
                            MeasurementModel& meas) {
  s.validate();
  if (s.size() < 2) throw std::invalid_argument("run_protocol: need at least two transmitters");
  if (opt.intervals < 1) throw std::invalid_argument("run_protocol: N must be >= 1");

  const std::size_t m_total = s.size();
  PhaseAssignment pa = PhaseAssignment::zeros(m_total, false);
  pa.phases[0] = normalize_angle(opt.first_phase);
  pa.active[0] = true;

  AdaptOptions aopt;
  aopt.intervals = opt.intervals;
  aopt.probe_repeats = opt.probe_repeats;
  aopt.frame_offset = opt.first_phase;

  ProtocolResult r;
  r.intervals_per_transmitter = opt.intervals;
  r.stages.reserve(m_total - 1);
  for (std::size_t m = 1; m < m_total; ++m) {
    Stage st;
    st.transmitter = m;
    st.adapt = run_a1(s, pa, m, aopt, meas);
    st.error = normalize_angle(st.adapt.phase - st.adapt.target);
    pa.phases[m] = st.adapt.phase;
    pa.active[m] = true;
    r.stages.push_back(std::move(st));
  }
  r.phases = pa.phases;
  r.q_d = harvested_power(s, pa);
  r.q_star = optimal_power(s);
  if (!(r.q_star > 0.0)) throw std::invalid_argument("run_protocol: all channel gains are zero");
  r.eta = r.q_d / r.q_star;
  r.total_feedback_intervals = opt.intervals * static_cast<int>(m_total - 1);
  return r;
}

std::vector<double> phase_errors(const ProtocolResult& result, const Scenario& s) {
  const std::size_t m_total = s.size();
  if (result.phases.size() != m_total)
    throw std::invalid_argument("phase_errors: result does not match scenario");
  std::vector<double> e(m_total, 0.0);
  PhaseAssignment pa = PhaseAssignment::zeros(m_total, false);
  pa.phases = result.phases;
  for (std::size_t m = 1; m < m_total; ++m) {
    for (std::size_t i = 0; i < m; ++i) pa.active[i] = true;
    const SumSignal ss = sum_signal(s, pa, m);
    e[m] = normalize_angle(result.phases[m] - aligned_phase(s, ss, m));
  }
  return e;
}

namespace {

struct GainSums {
  double self = 0.0;   // sum beta_m
  double cross = 0.0;  // sum_{i != j} sqrt(beta_i beta_j)
};

GainSums gain_sums(const Scenario& s) {
  GainSums g;
  double root_sum = 0.0;
  for (const auto& c : s.channels) {
    g.self += c.beta;
    root_sum += std::sqrt(c.beta);
  }
  g.cross = std::max(0.0, root_sum * root_sum - g.self);
  return g;
}

IntervalRequirement requirement_from_radicand(double radicand) {
  IntervalRequirement req;
  if (radicand < 0.0) {
    req.status = IntervalRequirement::Status::radicand_negative;
    req.log2_bound = std::numeric_limits<double>::quiet_NaN();
  } else if (radicand > 1.0) {
    req.status = IntervalRequirement::Status::radicand_above_one;
    req.log2_bound = std::numeric_limits<double>::quiet_NaN();
  } else {
    const double angle = std::acos(std::sqrt(radicand));
    req.log2_bound = angle > 0.0 ? std::log2(pi / angle) : std::numeric_limits<double>::infinity();
  }
  return req;
}

void check_target(double eta_hat) {
  if (!(eta_hat > 0.0 && eta_hat <= 1.0))
    throw std::invalid_argument("target efficiency must lie in (0, 1]");
}

}  // namespace

double efficiency_lower_bound(const Scenario& s, int intervals) {
  if (intervals < 1) throw std::invalid_argument("efficiency_lower_bound: N must be >= 1");
  const GainSums g = gain_sums(s);
  const double c = std::cos(pi / std::ldexp(1.0, intervals));
  const double total = g.self + g.cross;
  if (!(total > 0.0)) throw std::invalid_argument("efficiency_lower_bound: all gains are zero");
  return (g.self + g.cross * c * c) / total;
}

int IntervalRequirement::min_intervals() const {
  if (status == Status::no_cross_terms) return 1;
  if (status != Status::ok || !std::isfinite(log2_bound))
    throw std::domain_error("no finite interval count meets the target");
  return std::max(1, static_cast<int>(std::ceil(log2_bound)));
}

IntervalRequirement required_intervals(const Scenario& s, double eta_hat) {
  check_target(eta_hat);
  const GainSums g = gain_sums(s);
  if (g.cross <= 0.0) return {IntervalRequirement::Status::no_cross_terms, 0.0};
  return requirement_from_radicand(eta_hat - (1.0 - eta_hat) * g.self / g.cross);
}

IntervalRequirement required_intervals_equal_gain(int num_transmitters, double eta_hat) {
  check_target(eta_hat);
  if (num_transmitters < 1) throw std::invalid_argument("need at least one transmitter");
  if (num_transmitters == 1) return {IntervalRequirement::Status::no_cross_terms, 0.0};
  const double m = num_transmitters;
  return requirement_from_radicand((m * eta_hat - 1.0) / (m - 1.0));
}

InductionCheck check_induction_inequality(const Scenario& s, const std::vector<double>& errors,
                                          double tolerance) {
  const std::size_t m_total = s.size();
  if (errors.size() != m_total)
    throw std::invalid_argument("check_induction_inequality: one error per transmitter");
  InductionCheck out;
  double q = s.channels[0].beta;
  for (std::size_t k = 1; k < m_total; ++k) {
    const double b = s.channels[k].beta;
    q = b + q + 2.0 * std::cos(errors[k]) * std::sqrt(b * q);
  }
  double self = 0.0;
  double weighted = 0.0;  // sum_m sqrt(beta_m) cos(e_m)
  double weighted_sq = 0.0;
  for (std::size_t m = 0; m < m_total; ++m) {
    const double b = s.channels[m].beta;
    const double w = std::sqrt(b) * std::cos(errors[m]);
    self += b;
    weighted += w;
    weighted_sq += w * w;
  }
  out.recursive_q = q;
  out.rhs = self + (weighted * weighted - weighted_sq);
  out.slack = out.recursive_q - out.rhs;
  const double scale = std::max(self, std::numeric_limits<double>::min());
  out.holds = out.slack >= -tolerance * scale;
  return out;
}

std::vector<double> training_interval_powers(const ProtocolResult& r) {
  std::vector<double> out;
  out.reserve(r.total_feedback_intervals);
  for (const auto& st : r.stages)
    for (const auto& rec : st.adapt.trace.records)
      out.push_back(0.5 * (rec.true_q_psi + rec.true_q_psi_prime));
  return out;
}

std::vector<double> committed_power_trajectory(const ProtocolResult& r, const Scenario& s) {
  std::vector<double> out;
  out.reserve(r.total_feedback_intervals);
  for (const auto& st : r.stages)
    for (const auto& rec : st.adapt.trace.records)
      out.push_back(partial_power(s, st.adapt.sum, st.transmitter, rec.arc.center));
  return out;
}

void write_protocol_summary_csv(std::ostream& os, const Scenario& s, const ProtocolResult& r,
                                bool header) {
  if (header) os << "M,N,Q_d,Q_star,eta,bound,max_abs_error\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%d,%.15g,%.15g,%.15g,%.15g,%.15g\n", s.size(),
                r.intervals_per_transmitter, r.q_d, r.q_star, r.eta,
                efficiency_lower_bound(s, r.intervals_per_transmitter), r.max_abs_error());
  os << buf;
}

}  // namespace dwet
