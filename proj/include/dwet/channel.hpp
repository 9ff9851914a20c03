#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dwet/rng.hpp"

namespace dwet {

struct Path {
  double attenuation;  // amplitude a_l >= 0
  double delay;        // seconds >= 0
};

/// Multipath taps between one transmitter and the receiver.
class PathSet {
 public:
  explicit PathSet(std::vector<Path> paths);

  const std::vector<Path>& paths() const { return paths_; }
  std::size_t size() const { return paths_.size(); }

 private:
  std::vector<Path> paths_;
};

/// Aggregated narrowband channel: power gain and phase shift in [-pi, pi).
struct Channel {
  double beta = 0.0;
  double theta = 0.0;

  friend bool operator==(const Channel&, const Channel&) = default;
};

struct Scenario {
  double transmit_power = 1.0;  // watts per transmitter
  double carrier_freq = 915e6;  // hertz
  double conversion_eff = 1.0;  // rho in (0, 1]
  std::vector<Channel> channels;

  std::size_t size() const { return channels.size(); }
  /// rho * P, the common factor in every power expression.
  double power_scale() const { return conversion_eff * transmit_power; }

  /// Throws std::invalid_argument if any field is out of range.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Line-of-sight path-loss scenario generator parameters.
struct ScenarioDistribution {
  int num_transmitters = 5;
  double c0 = 1e-2;  // attenuation at the reference distance (-20 dB)
  double r0 = 1.0;   // reference distance, meters
  double delta = 3.0;
  double r_min = 5.0;
  double r_max = 15.0;
  double transmit_power = 1.0;
  double conversion_eff = 1.0;
  double carrier_freq = 915e6;

  void validate() const;
};

struct GeneratedScenario {
  Scenario scenario;
  std::vector<double> distances;
};

Channel aggregate_channel(const PathSet& paths, double carrier_freq);

double path_loss_gain(const ScenarioDistribution& dist, double distance);

/// Draws distances and phases for every transmitter from `rng`. One distance
/// then one phase is drawn per transmitter, in index order.
GeneratedScenario generate_scenario(const ScenarioDistribution& dist, Rng& rng);

/// Scenario with every gain set to `beta` and every phase to zero.
Scenario equal_gain_scenario(int num_transmitters, double beta = 1.0);

/// Flat text record: header line, then one "beta theta" line per transmitter.
void write_scenario(std::ostream& os, const Scenario& s);
Scenario read_scenario(std::istream& is);
std::string scenario_to_string(const Scenario& s);

}  // namespace dwet
