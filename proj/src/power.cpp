#include "dwet/power.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dwet/angle.hpp"

namespace dwet {

PhaseAssignment PhaseAssignment::all_active(std::vector<double> phases) {
  PhaseAssignment pa;
  pa.active.assign(phases.size(), true);
  pa.phases = std::move(phases);
  for (auto& p : pa.phases) p = normalize_angle(p);
  return pa;
}

PhaseAssignment PhaseAssignment::zeros(std::size_t m, bool on) {
  PhaseAssignment pa;
  pa.phases.assign(m, 0.0);
  pa.active.assign(m, on);
  return pa;
}

PhaseAssignment PhaseAssignment::aligned(const Scenario& s) {
  std::vector<double> ph;
  ph.reserve(s.size());
  for (const auto& c : s.channels) ph.push_back(c.theta);
  return all_active(std::move(ph));
}

MeasurementModel::MeasurementModel(double noise_std, Rng& rng)
    : mode_(Mode::additive_noise), noise_std_(noise_std), rng_(&rng) {
  if (!(noise_std >= 0.0)) throw std::invalid_argument("noise_std must be >= 0");
}

double MeasurementModel::measure(double true_power) {
  if (mode_ == Mode::exact || noise_std_ == 0.0) return true_power;
  std::normal_distribution<double> noise(0.0, noise_std_);
  return std::max(0.0, true_power + noise(*rng_));
}

namespace {

void check_shape(const Scenario& s, const PhaseAssignment& pa) {
  if (pa.phases.size() != s.size() || pa.active.size() != s.size())
    throw std::invalid_argument("phase assignment does not match scenario size");
}

}  // namespace

double harvested_power(const Scenario& s, const PhaseAssignment& pa) {
  check_shape(s, pa);
  const std::size_t m = s.size();
  double self = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!pa.active[i]) continue;
    const auto& ci = s.channels[i];
    self += ci.beta;
    const double di = pa.phases[i] - ci.theta;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!pa.active[j]) continue;
      const auto& cj = s.channels[j];
      cross += std::sqrt(ci.beta * cj.beta) * std::cos(di - (pa.phases[j] - cj.theta));
    }
  }
  // each unordered pair appears twice in the i != j sum
  return s.power_scale() * std::max(0.0, self + 2.0 * cross);
}

double optimal_power(const Scenario& s) {
  double self = 0.0;
  double root_sum = 0.0;
  for (const auto& c : s.channels) {
    self += c.beta;
    root_sum += std::sqrt(c.beta);
  }
  const double cross = root_sum * root_sum - self;
  return s.power_scale() * (self + cross);
}

double unadapted_power(const Scenario& s) {
  return harvested_power(s, PhaseAssignment::zeros(s.size()));
}

SumSignal sum_signal(const Scenario& s, const PhaseAssignment& pa, std::size_t excluding) {
  check_shape(s, pa);
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == excluding || !pa.active[i]) continue;
    const double amp = std::sqrt(s.channels[i].beta);
    const double d = pa.phases[i] - s.channels[i].theta;
    re += amp * std::cos(d);
    im += amp * std::sin(d);
  }
  SumSignal ss;
  ss.alpha = re * re + im * im;
  ss.varphi = ss.alpha > 0.0 ? normalize_angle(std::atan2(im, re)) : 0.0;
  return ss;
}

double partial_power(const Scenario& s, const SumSignal& ss, std::size_t m, double phi_m) {
  const auto& c = s.channels.at(m);
  const double q = c.beta + ss.alpha +
                   2.0 * std::sqrt(c.beta * ss.alpha) * std::cos(phi_m - (c.theta + ss.varphi));
  return s.power_scale() * std::max(0.0, q);
}

double aligned_phase(const Scenario& s, const SumSignal& ss, std::size_t m) {
  return normalize_angle(s.channels.at(m).theta + ss.varphi);
}

namespace {

double row_power(const Scenario& s, const double* row) {
  const std::size_t m = s.size();
  double self = 0.0;
  double cross = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double bi = s.channels[i].beta;
    self += bi;
    const double di = row[i] - s.channels[i].theta;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double bj = s.channels[j].beta;
      cross += std::sqrt(bi * bj) * std::cos(di - (row[j] - s.channels[j].theta));
    }
  }
  return s.power_scale() * std::max(0.0, self + 2.0 * cross);
}

void check_batch(const Scenario& s, std::span<const double> phases, std::span<double> out) {
  if (s.size() == 0 || phases.size() != out.size() * s.size())
    throw std::invalid_argument("batch: phases must hold out.size() rows of M phases");
}

}  // namespace

void harvested_power_batch(const Scenario& s, std::span<const double> phases,
                           std::span<double> out) {
  check_batch(s, phases, out);
  const auto rows = static_cast<std::ptrdiff_t>(out.size());
  const std::size_t m = s.size();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    out[r] = row_power(s, phases.data() + r * m);
  }
}

void harvested_power_batch_serial(const Scenario& s, std::span<const double> phases,
                                  std::span<double> out) {
  check_batch(s, phases, out);
  const std::size_t m = s.size();
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = row_power(s, phases.data() + r * m);
}

}  // namespace dwet
