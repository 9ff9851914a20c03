// Command-line front end: single runs, experiments, bounds and self-checks.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dwet/adapt.hpp"
#include "dwet/angle.hpp"
#include "dwet/baseline.hpp"
#include "dwet/channel.hpp"
#include "dwet/config.hpp"
#include "dwet/experiments.hpp"
#include "dwet/parallel.hpp"
#include "dwet/protocol.hpp"
#include "dwet/verify.hpp"
#include "json.hpp"

namespace {

using namespace dwet;

constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitIo = 3;

constexpr std::uint64_t kScenarioSalt = 0x7363656eULL;
constexpr std::uint64_t kNoiseSalt = 0x6e6f6973ULL;
constexpr std::uint64_t kPerturbSalt = 0x70657274ULL;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  int trials = 0;
  std::string out;
  std::string config;
  std::string format = "csv";
  int threads = 0;
};

std::string g15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ExperimentConfig load_config(const Globals& g, ExperimentConfig base) {
  if (!g.config.empty()) base = parse_config(read_file(g.config), base);
  return base;
}

struct ScenarioArgs {
  int m = 5;
  bool equal_gains = false;
  std::string scenario_file;
};

void add_scenario_flags(CLI::App* cmd, ScenarioArgs& a) {
  cmd->add_option("--M", a.m, "number of transmitters")->check(CLI::PositiveNumber);
  cmd->add_flag("--equal-gains", a.equal_gains, "unit gains, zero channel phases");
  cmd->add_option("--scenario", a.scenario_file, "scenario record file (overrides --M)");
}

Scenario make_scenario(const Globals& g, const ScenarioArgs& a) {
  if (!a.scenario_file.empty()) {
    std::ifstream f(a.scenario_file);
    if (!f) throw IoError("cannot read " + a.scenario_file);
    return read_scenario(f);
  }
  if (a.equal_gains) return equal_gain_scenario(a.m);
  ExperimentConfig cfg = load_config(g, ExperimentConfig{});
  ScenarioDistribution d = cfg.distribution;
  d.num_transmitters = a.m;
  Rng rng = make_stream(g.seed, 0, kScenarioSalt);
  return generate_scenario(d, rng).scenario;
}

struct Meas {
  Rng rng;
  MeasurementModel model;
  Meas(const Globals& g, double noise_std) : rng(make_stream(g.seed, 0, kNoiseSalt)) {
    if (noise_std > 0.0) model = MeasurementModel(noise_std, rng);
  }
  Meas(const Meas&) = delete;
};

void ensure_dir(const std::filesystem::path& p) {
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw IoError("cannot create " + p.string() + ": " + ec.message());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed energy beamforming with one-bit feedback"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "master random seed");
  app.add_option("--trials", g.trials, "Monte Carlo trials (experiments)");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--config", g.config, "key = value configuration file");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", g.threads, "worker threads (0 = OpenMP default)");

  // adapt
  auto* adapt_cmd = app.add_subcommand("adapt", "one bisection run for the last transmitter");
  ScenarioArgs adapt_sc;
  adapt_sc.m = 2;
  int adapt_n = 5;
  int adapt_repeats = 1;
  double adapt_noise = 0.0;
  add_scenario_flags(adapt_cmd, adapt_sc);
  adapt_cmd->add_option("--N", adapt_n, "feedback intervals")->check(CLI::PositiveNumber);
  adapt_cmd->add_option("--repeats", adapt_repeats, "readings averaged per probe")
      ->check(CLI::PositiveNumber);
  adapt_cmd->add_option("--noise-std", adapt_noise, "measurement noise std (W)");

  // protocol
  auto* proto_cmd = app.add_subcommand("protocol", "full sequential protocol run");
  ScenarioArgs proto_sc;
  int proto_n = 5;
  double proto_noise = 0.0;
  bool proto_traces = false;
  add_scenario_flags(proto_cmd, proto_sc);
  proto_cmd->add_option("--N", proto_n, "feedback intervals per transmitter")
      ->check(CLI::PositiveNumber);
  proto_cmd->add_option("--noise-std", proto_noise, "measurement noise std (W)");
  proto_cmd->add_flag("--traces", proto_traces, "write per-transmitter traces under --out");

  // baseline
  auto* base_cmd = app.add_subcommand("baseline", "random phase perturbation run");
  ScenarioArgs base_sc;
  int base_intervals = 300;
  double base_scale = pi / 8.0;
  bool base_gaussian = false;
  double base_noise = 0.0;
  add_scenario_flags(base_cmd, base_sc);
  base_cmd->add_option("--intervals", base_intervals, "feedback intervals")
      ->check(CLI::PositiveNumber);
  base_cmd->add_option("--scale", base_scale, "perturbation half-range or std (rad)");
  base_cmd->add_flag("--gaussian", base_gaussian, "gaussian instead of uniform perturbations");
  base_cmd->add_option("--noise-std", base_noise, "measurement noise std (W)");

  // exp
  auto* exp_cmd = app.add_subcommand("exp", "Monte Carlo experiment");
  std::string exp_name;
  exp_cmd->add_option("name", exp_name,
                      "efficiency-vs-N | power-vs-M | convergence-comparison | overhead-tradeoff")
      ->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "oracle and property checks");
  double verify_scale = 1.0;
  verify_cmd->add_option("--scale", verify_scale, "fraction of the full instance counts")
      ->check(CLI::Range(1e-4, 1.0));

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "efficiency bound and required N");
  ScenarioArgs bound_sc;
  int bound_n = 0;
  double eta_hat = 0.99;
  add_scenario_flags(bound_cmd, bound_sc);
  bound_cmd->add_option("--N", bound_n, "evaluate the bound at this N (default: required N)");
  bound_cmd->add_option("--eta-hat", eta_hat, "target efficiency in (0, 1]");

  // scenario
  auto* scen_cmd = app.add_subcommand("scenario", "print a generated scenario record");
  ScenarioArgs scen_sc;
  add_scenario_flags(scen_cmd, scen_sc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  set_thread_count(g.threads);
  const bool json = g.format == "json";
  std::ostream& out = std::cout;

  try {
    if (*adapt_cmd) {
      const Scenario s = make_scenario(g, adapt_sc);
      if (s.size() < 2) throw std::invalid_argument("adapt needs --M >= 2");
      // Every other transmitter is on with phase zero; the last one adapts.
      PhaseAssignment fixed = PhaseAssignment::zeros(s.size());
      const std::size_t m = s.size() - 1;
      Meas meas(g, adapt_noise);
      AdaptOptions opt;
      opt.intervals = adapt_n;
      opt.probe_repeats = adapt_repeats;
      const AdaptResult r = run_a1(s, fixed, m, opt, meas.model);
      const double err = circular_distance(r.phase, r.target);
      if (json) {
        nlohmann::ordered_json j;
        j["final_phase"] = r.phase;
        j["target"] = r.target;
        j["abs_error"] = err;
        j["bound"] = pi / std::ldexp(1.0, adapt_n);
        auto& recs = j["trace"] = nlohmann::ordered_json::array();
        for (const auto& rec : r.trace.records)
          recs.push_back({{"n", rec.n}, {"psi", rec.probes.psi},
                          {"psi_prime", rec.probes.psi_prime}, {"q_psi", rec.q_psi},
                          {"q_psi_prime", rec.q_psi_prime}, {"bit", rec.bit.psi_wins ? 1 : 0},
                          {"arc_center", rec.arc.center},
                          {"arc_half_width", rec.arc.half_width}});
        out << j.dump(2) << '\n';
      } else {
        write_trace_csv(out, r.trace);
        out << "# final_phase=" << g15(r.phase) << " target=" << g15(r.target)
            << " abs_error=" << g15(err) << '\n';
      }
    } else if (*proto_cmd) {
      const Scenario s = make_scenario(g, proto_sc);
      Meas meas(g, proto_noise);
      ProtocolOptions opt;
      opt.intervals = proto_n;
      const ProtocolResult r = run_protocol(s, opt, meas.model);
      if (json) {
        nlohmann::ordered_json j;
        j["M"] = s.size();
        j["N"] = proto_n;
        j["Q_d"] = r.q_d;
        j["Q_star"] = r.q_star;
        j["eta"] = r.eta;
        j["bound"] = efficiency_lower_bound(s, proto_n);
        j["max_abs_error"] = r.max_abs_error();
        j["total_feedback_intervals"] = r.total_feedback_intervals;
        j["phases"] = r.phases;
        j["errors"] = r.errors();
        out << j.dump(2) << '\n';
      } else {
        write_protocol_summary_csv(out, s, r);
      }
      if (proto_traces) {
        const auto dir = std::filesystem::path(g.out.empty() ? "out" : g.out) / "protocol";
        ensure_dir(dir);
        for (const auto& st : r.stages) {
          const auto path = dir / ("trace_et" + std::to_string(st.transmitter + 1) + ".csv");
          std::ofstream f(path);
          if (!f) throw IoError("cannot write " + path.string());
          write_trace_csv(f, st.adapt.trace);
        }
      }
    } else if (*base_cmd) {
      const Scenario s = make_scenario(g, base_sc);
      Meas meas(g, base_noise);
      PerturbationConfig cfg;
      cfg.scale = base_scale;
      cfg.max_intervals = base_intervals;
      cfg.distribution =
          base_gaussian ? PerturbationDistribution::gaussian : PerturbationDistribution::uniform;
      Rng rng = make_stream(g.seed, 0, kPerturbSalt);
      const BaselineTrace t = run_random_perturbation(s, cfg, meas.model, rng);
      if (json) {
        nlohmann::ordered_json j;
        j["initial_power"] = t.initial_power;
        j["final_power"] = t.final_power;
        j["Q_star"] = optimal_power(s);
        j["best_power"] = t.best_power_curve();
        out << j.dump(2) << '\n';
      } else {
        write_baseline_csv(out, t);
      }
    } else if (*exp_cmd) {
      const ExperimentKind kind = parse_experiment_name(exp_name);
      ExperimentConfig cfg = load_config(g, ExperimentConfig::defaults(kind));
      cfg.experiment = kind;
      if (app.count("--seed")) cfg.seed = g.seed;
      if (app.count("--trials")) cfg.trials = g.trials;
      if (!g.out.empty()) cfg.out_dir = g.out;
      ExperimentResult r = run_experiment(cfg);
      try {
        write_experiment(r, cfg.out_dir);
      } catch (const std::exception& e) {
        throw IoError(e.what());
      }
      if (json) write_result_json(out, r);
      else write_result_csv(out, r);
    } else if (*verify_cmd) {
      const auto results = verify::run_suite(g.seed, verify_scale);
      bool all = true;
      for (const auto& c : results) {
        all = all && c.passed;
        out << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.instances
            << " instances, " << c.violations << " violations): " << c.detail << '\n';
      }
      out << (all ? "all checks passed" : "verification FAILED") << '\n';
      if (!all) return kExitVerify;
    } else if (*bound_cmd) {
      const Scenario s = make_scenario(g, bound_sc);
      const IntervalRequirement req = required_intervals(s, eta_hat);
      const int n = bound_n > 0 ? bound_n : (req.feasible() && std::isfinite(req.log2_bound)
                                                 ? req.min_intervals()
                                                 : 1);
      const double lb = efficiency_lower_bound(s, n);
      std::string eq;
      if (bound_sc.equal_gains) {
        const auto r14 = required_intervals_equal_gain(static_cast<int>(s.size()), eta_hat);
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.4f", r14.log2_bound);
        eq = buf;
      }
      char req_buf[40];
      if (req.status == IntervalRequirement::Status::ok)
        std::snprintf(req_buf, sizeof req_buf, "%.4f", req.log2_bound);
      else if (req.status == IntervalRequirement::Status::no_cross_terms)
        std::snprintf(req_buf, sizeof req_buf, "0");
      else
        std::snprintf(req_buf, sizeof req_buf, "infeasible");
      if (json) {
        nlohmann::ordered_json j;
        j["M"] = s.size();
        j["eta_hat"] = eta_hat;
        j["required_N"] = req_buf;
        j["N"] = n;
        j["lower_bound"] = lb;
        if (!eq.empty()) j["required_N_equal_gain"] = eq;
        out << j.dump(2) << '\n';
      } else {
        out << "M,eta_hat,required_N,N,lower_bound,required_N_equal_gain\n"
            << s.size() << ',' << g15(eta_hat) << ',' << req_buf << ',' << n << ',' << g15(lb)
            << ',' << eq << '\n';
      }
    } else if (*scen_cmd) {
      write_scenario(out, make_scenario(g, scen_sc));
    }
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
