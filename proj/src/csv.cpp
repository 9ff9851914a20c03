#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "dwet/experiments.hpp"
#include "json.hpp"

namespace dwet {

namespace {

std::string g15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

bool has_probes(const ExperimentResult& r, const std::string& curve) {
  for (const auto& row : r.rows)
    if (row.curve == curve && row.probes >= 0) return true;
  return false;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void write_curve_csv(std::ostream& os, const ExperimentResult& r, const std::string& curve) {
  const bool probes = has_probes(r, curve);
  os << r.x_name << ",mean,stderr,samples" << (probes ? ",probes" : "") << '\n';
  for (const auto& row : r.rows) {
    if (row.curve != curve) continue;
    os << g15(row.x) << ',' << g15(row.mean) << ',' << g15(row.stderr_mean) << ',' << row.samples;
    if (probes) os << ',' << row.probes;
    os << '\n';
  }
}

void write_result_csv(std::ostream& os, const ExperimentResult& r) {
  os << "curve," << r.x_name << ",mean,stderr,samples,probes\n";
  for (const auto& row : r.rows) {
    os << row.curve << ',' << g15(row.x) << ',' << g15(row.mean) << ',' << g15(row.stderr_mean)
       << ',' << row.samples << ',';
    if (row.probes >= 0) os << row.probes;
    os << '\n';
  }
}

void write_result_json(std::ostream& os, const ExperimentResult& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["config_hash"] = r.config_hash;
  j["x"] = r.x_name;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json e;
    e["curve"] = row.curve;
    e[r.x_name] = row.x;
    e["mean"] = row.mean;
    e["stderr"] = row.stderr_mean;
    e["samples"] = row.samples;
    if (row.probes >= 0) e["probes"] = row.probes;
    rows.push_back(std::move(e));
  }
  os << j.dump(2) << '\n';
}

std::filesystem::path write_experiment(const ExperimentResult& r,
                                       const std::filesystem::path& out_dir) {
  const auto dir = out_dir / r.experiment;
  std::filesystem::create_directories(dir);
  for (const auto& curve : r.curves) {
    std::ofstream f(dir / (curve + ".csv"));
    if (!f) throw std::runtime_error("cannot write " + (dir / (curve + ".csv")).string());
    write_curve_csv(f, r, curve);
    if (!f) throw std::runtime_error("write failed for " + curve);
  }
  nlohmann::ordered_json meta;
  meta["experiment"] = r.experiment;
  meta["seed"] = r.seed;
  meta["trials"] = r.trials;
  meta["timestamp"] = r.timestamp.empty() ? utc_now() : r.timestamp;
  meta["config_hash"] = r.config_hash;
  meta["config"] = r.config_text;
  meta["curves"] = r.curves;
  meta["x"] = r.x_name;
  if (r.experiment == "efficiency-vs-N") meta["bound_violations"] = r.bound_violations;
  std::ofstream f(dir / "metadata.json");
  if (!f) throw std::runtime_error("cannot write " + (dir / "metadata.json").string());
  f << meta.dump(2) << '\n';
  if (!f) throw std::runtime_error("write failed for metadata.json");
  return dir;
}

}  // namespace dwet
