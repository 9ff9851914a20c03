#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dwet/channel.hpp"

namespace dwet {

enum class ExperimentKind { efficiency_vs_n, power_vs_m, convergence, overhead_tradeoff };

std::string_view experiment_name(ExperimentKind k);
/// Accepts the canonical names and the fig5..fig8 aliases.
ExperimentKind parse_experiment_name(std::string_view name);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::efficiency_vs_n;
  int trials = 1000;
  std::uint64_t seed = 1;
  std::vector<int> n_list;       // per-transmitter feedback intervals to sweep
  std::vector<int> m_list;       // transmitter counts to sweep
  std::vector<int> budgets;      // total-interval budgets (overhead trade-off)
  int protocol_intervals = 5;    // fixed N for convergence / overhead runs
  int horizon = 300;             // intervals simulated in the convergence run
  double perturbation_scale = 0.39269908169872414;  // pi / 8
  ScenarioDistribution distribution;
  std::string out_dir = "out";

  /// Per-experiment defaults (desk-scale trial counts).
  static ExperimentConfig defaults(ExperimentKind k);
  void validate() const;
};

/// Applies `key = value` lines onto `base`. Lists are comma separated and
/// accept a:b (inclusive) and a:b:step ranges. '#' starts a comment.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base);
/// Applies one key/value pair; throws std::invalid_argument on unknown keys.
void apply_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Canonical key = value rendering; parse_config(to_text(c), ...) round-trips.
std::string to_text(const ExperimentConfig& cfg);

/// FNV-1a 64 of to_text(cfg) with the output directory blanked, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

std::vector<int> parse_int_list(std::string_view text);

}  // namespace dwet
