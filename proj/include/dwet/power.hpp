#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dwet/channel.hpp"
#include "dwet/rng.hpp"

namespace dwet {

/// Transmit phase and on/off state for every transmitter of a scenario.
struct PhaseAssignment {
  std::vector<double> phases;
  std::vector<bool> active;

  static PhaseAssignment all_active(std::vector<double> phases);
  static PhaseAssignment zeros(std::size_t m, bool on = true);
  /// phi_m = theta_m for every transmitter.
  static PhaseAssignment aligned(const Scenario& s);

  std::size_t size() const { return phases.size(); }
};

/// Phasor sum of the other active transmitters as seen by one transmitter:
/// alpha is its squared magnitude, varphi its angle.
struct SumSignal {
  double alpha = 0.0;
  double varphi = 0.0;
};

class MeasurementModel {
 public:
  enum class Mode { exact, additive_noise };

  /// Perfect power readings.
  MeasurementModel() = default;
  /// Gaussian reading noise; `rng` is owned by the caller and must outlive the model.
  MeasurementModel(double noise_std, Rng& rng);

  Mode mode() const { return mode_; }
  double noise_std() const { return noise_std_; }
  bool is_exact() const { return mode_ == Mode::exact; }

  double measure(double true_power);

 private:
  Mode mode_ = Mode::exact;
  double noise_std_ = 0.0;
  Rng* rng_ = nullptr;
};

/// rho P |sum over active m of sqrt(beta_m) e^{j(phi_m - theta_m)}|^2, written
/// as the self-plus-cross-term sum.
double harvested_power(const Scenario& s, const PhaseAssignment& pa);

double optimal_power(const Scenario& s);

/// Power with all transmitters on and phase zero.
double unadapted_power(const Scenario& s);

SumSignal sum_signal(const Scenario& s, const PhaseAssignment& pa, std::size_t excluding);

/// Received power when transmitter m joins the sum signal `ss` with phase phi_m.
double partial_power(const Scenario& s, const SumSignal& ss, std::size_t m, double phi_m);

/// The phase of transmitter m that maximizes partial_power: theta_m + varphi,
/// which lines its received phasor up with the sum signal.
double aligned_phase(const Scenario& s, const SumSignal& ss, std::size_t m);

/// Batched evaluation of harvested_power over many phase vectors. Row r of
/// `phases` (row-major, M columns) is one all-active assignment.
void harvested_power_batch(const Scenario& s, std::span<const double> phases,
                           std::span<double> out);
void harvested_power_batch_serial(const Scenario& s, std::span<const double> phases,
                                  std::span<double> out);

}  // namespace dwet
