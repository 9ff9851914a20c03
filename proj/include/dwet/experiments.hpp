#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dwet/config.hpp"

namespace dwet {

struct ResultRow {
  std::string curve;
  double x = 0.0;  // sweep coordinate (N, M, interval index or budget)
  double mean = 0.0;
  double stderr_mean = 0.0;
  int samples = 0;
  long probes = -1;  // probe transmissions consumed, where meaningful
};

struct ExperimentResult {
  std::string experiment;
  std::string x_name;
  std::vector<std::string> curves;
  std::vector<ResultRow> rows;  // curve-major, then sweep order

  std::uint64_t seed = 0;
  int trials = 0;
  std::string config_hash;
  std::string config_text;
  std::string timestamp;  // filled in by the writer; never part of the CSVs
  int bound_violations = 0;  // efficiency-vs-N only: trials with eta below its bound

  std::vector<ResultRow> curve(const std::string& name) const;
  const ResultRow& at(const std::string& curve, double x) const;
};

ExperimentResult exp_efficiency_vs_n(const ExperimentConfig& cfg);
ExperimentResult exp_power_vs_m(const ExperimentConfig& cfg);
ExperimentResult exp_convergence(const ExperimentConfig& cfg);
ExperimentResult exp_overhead_tradeoff(const ExperimentConfig& cfg);

/// Dispatches on cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// One CSV for a curve: header "<x_name>,mean,stderr,samples[,probes]".
void write_curve_csv(std::ostream& os, const ExperimentResult& r, const std::string& curve);
/// All rows in one table: "curve,<x_name>,mean,stderr,samples,probes".
void write_result_csv(std::ostream& os, const ExperimentResult& r);
void write_result_json(std::ostream& os, const ExperimentResult& r);

/// Writes <out_dir>/<experiment>/<curve>.csv and metadata.json. Throws
/// std::filesystem::filesystem_error or std::runtime_error on I/O failure.
std::filesystem::path write_experiment(const ExperimentResult& r,
                                       const std::filesystem::path& out_dir);

}  // namespace dwet
