#include "dwet/channel.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "dwet/angle.hpp"

namespace dwet {

PathSet::PathSet(std::vector<Path> paths) : paths_(std::move(paths)) {
  if (paths_.empty()) throw std::invalid_argument("PathSet: no paths");
  for (const auto& p : paths_) {
    if (!(p.attenuation >= 0.0) || !(p.delay >= 0.0))
      throw std::invalid_argument("PathSet: attenuation and delay must be >= 0");
  }
}

void Scenario::validate() const {
  if (!(transmit_power > 0.0)) throw std::invalid_argument("Scenario: P must be > 0");
  if (!(carrier_freq > 0.0)) throw std::invalid_argument("Scenario: f_c must be > 0");
  if (!(conversion_eff > 0.0 && conversion_eff <= 1.0))
    throw std::invalid_argument("Scenario: rho must be in (0, 1]");
  if (channels.empty()) throw std::invalid_argument("Scenario: no transmitters");
  for (const auto& c : channels) {
    if (!(c.beta >= 0.0)) throw std::invalid_argument("Scenario: beta must be >= 0");
    if (!(c.theta >= -pi && c.theta < pi))
      throw std::invalid_argument("Scenario: theta must be in [-pi, pi)");
  }
}

void ScenarioDistribution::validate() const {
  if (num_transmitters < 1) throw std::invalid_argument("distribution: M must be >= 1");
  if (!(c0 > 0.0)) throw std::invalid_argument("distribution: c0 must be > 0");
  if (!(r0 > 0.0)) throw std::invalid_argument("distribution: r0 must be > 0");
  if (!(delta > 0.0)) throw std::invalid_argument("distribution: delta must be > 0");
  if (!(r_min > 0.0 && r_min <= r_max))
    throw std::invalid_argument("distribution: need 0 < r_min <= r_max");
  if (!(transmit_power > 0.0)) throw std::invalid_argument("distribution: P must be > 0");
  if (!(conversion_eff > 0.0 && conversion_eff <= 1.0))
    throw std::invalid_argument("distribution: rho must be in (0, 1]");
}

Channel aggregate_channel(const PathSet& paths, double carrier_freq) {
  double re = 0.0;
  double im = 0.0;
  for (const auto& p : paths.paths()) {
    const double phase = two_pi * carrier_freq * p.delay;
    re += p.attenuation * std::cos(phase);
    im += p.attenuation * std::sin(phase);
  }
  Channel c;
  c.beta = re * re + im * im;
  // Zero-magnitude sums get theta = 0. Cancellation leaves rounding residue
  // around 1e-16 in re/im, so the test is relative to the total amplitude.
  double total = 0.0;
  for (const auto& p : paths.paths()) total += p.attenuation;
  const bool degenerate = std::hypot(re, im) <= 1e-12 * total;
  if (degenerate) c.beta = 0.0;
  c.theta = degenerate ? 0.0 : normalize_angle(std::atan2(im, re));
  return c;
}

double path_loss_gain(const ScenarioDistribution& dist, double distance) {
  return dist.c0 * std::pow(distance / dist.r0, -dist.delta);
}

GeneratedScenario generate_scenario(const ScenarioDistribution& dist, Rng& rng) {
  dist.validate();
  std::uniform_real_distribution<double> dist_r(dist.r_min, dist.r_max);
  std::uniform_real_distribution<double> dist_theta(-pi, pi);

  GeneratedScenario out;
  out.scenario.transmit_power = dist.transmit_power;
  out.scenario.carrier_freq = dist.carrier_freq;
  out.scenario.conversion_eff = dist.conversion_eff;
  out.scenario.channels.reserve(dist.num_transmitters);
  out.distances.reserve(dist.num_transmitters);
  for (int m = 0; m < dist.num_transmitters; ++m) {
    const double r = dist.r_min == dist.r_max ? dist.r_min : dist_r(rng);
    const double theta = normalize_angle(dist_theta(rng));
    out.distances.push_back(r);
    out.scenario.channels.push_back({path_loss_gain(dist, r), theta});
  }
  return out;
}

Scenario equal_gain_scenario(int num_transmitters, double beta) {
  if (num_transmitters < 1) throw std::invalid_argument("need at least one transmitter");
  Scenario s;
  s.channels.assign(num_transmitters, Channel{beta, 0.0});
  return s;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_scenario(std::ostream& os, const Scenario& s) {
  os << "M " << s.size() << '\n'
     << "P " << fmt17(s.transmit_power) << '\n'
     << "rho " << fmt17(s.conversion_eff) << '\n'
     << "fc " << fmt17(s.carrier_freq) << '\n';
  for (const auto& c : s.channels) os << fmt17(c.beta) << ' ' << fmt17(c.theta) << '\n';
}

Scenario read_scenario(std::istream& is) {
  auto expect_key = [&](const char* key) {
    std::string k;
    if (!(is >> k) || k != key)
      throw std::runtime_error(std::string("scenario record: expected '") + key + "'");
  };
  std::size_t m = 0;
  Scenario s;
  expect_key("M");
  is >> m;
  expect_key("P");
  is >> s.transmit_power;
  expect_key("rho");
  is >> s.conversion_eff;
  expect_key("fc");
  is >> s.carrier_freq;
  if (!is) throw std::runtime_error("scenario record: malformed header");
  s.channels.resize(m);
  for (auto& c : s.channels) {
    if (!(is >> c.beta >> c.theta)) throw std::runtime_error("scenario record: truncated");
  }
  s.validate();
  return s;
}

std::string scenario_to_string(const Scenario& s) {
  std::ostringstream os;
  write_scenario(os, s);
  return os.str();
}

}  // namespace dwet
