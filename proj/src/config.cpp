#include "dwet/config.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace dwet {

namespace {

struct NamedKind {
  std::string_view name;
  std::string_view alias;
  ExperimentKind kind;
};

constexpr NamedKind kKinds[] = {
    {"efficiency-vs-N", "fig5", ExperimentKind::efficiency_vs_n},
    {"power-vs-M", "fig6", ExperimentKind::power_vs_m},
    {"convergence-comparison", "fig7", ExperimentKind::convergence},
    {"overhead-tradeoff", "fig8", ExperimentKind::overhead_tradeoff},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  v = trim(v);
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config: bad value for '" + std::string(key) + "': '" +
                                std::string(v) + "'");
  return out;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

std::string_view experiment_name(ExperimentKind k) {
  for (const auto& nk : kKinds)
    if (nk.kind == k) return nk.name;
  return "unknown";
}

ExperimentKind parse_experiment_name(std::string_view name) {
  for (const auto& nk : kKinds)
    if (nk.name == name || nk.alias == name) return nk.kind;
  throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = trim(text.substr(pos, comma - pos));
    pos = comma + 1;
    if (item.empty()) continue;
    const auto c1 = item.find(':');
    if (c1 == std::string_view::npos) {
      out.push_back(parse_number<int>("list", item));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    const int lo = parse_number<int>("list", item.substr(0, c1));
    const int hi = parse_number<int>(
        "list", c2 == std::string_view::npos ? item.substr(c1 + 1) : item.substr(c1 + 1, c2 - c1 - 1));
    const int step = c2 == std::string_view::npos ? 1 : parse_number<int>("list", item.substr(c2 + 1));
    if (step <= 0 || hi < lo) throw std::invalid_argument("bad range '" + std::string(item) + "'");
    for (int v = lo; v <= hi; v += step) out.push_back(v);
  }
  return out;
}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind k) {
  ExperimentConfig c;
  c.experiment = k;
  switch (k) {
    case ExperimentKind::efficiency_vs_n:
      c.trials = 1000;
      c.n_list = parse_int_list("1:8");
      c.m_list = {5, 10};
      break;
    case ExperimentKind::power_vs_m:
      c.trials = 1;
      c.n_list = {1, 2, 3, 5};
      c.m_list = parse_int_list("1:20");
      break;
    case ExperimentKind::convergence:
      c.trials = 1;
      c.m_list = {5, 7};
      c.horizon = 300;
      break;
    case ExperimentKind::overhead_tradeoff:
      c.trials = 5000;
      c.m_list = {5};
      c.budgets = parse_int_list("5:300:5");
      break;
  }
  c.distribution.num_transmitters = c.m_list.empty() ? 5 : c.m_list.back();
  return c;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (m_list.empty()) throw std::invalid_argument("M list must be non-empty");
  for (int m : m_list)
    if (m < 1) throw std::invalid_argument("M values must be >= 1");
  if (protocol_intervals < 1) throw std::invalid_argument("N must be >= 1");
  switch (experiment) {
    case ExperimentKind::efficiency_vs_n:
    case ExperimentKind::power_vs_m:
      if (n_list.empty()) throw std::invalid_argument("N list must be non-empty");
      for (int n : n_list)
        if (n < 1) throw std::invalid_argument("N values must be >= 1");
      break;
    case ExperimentKind::convergence:
      if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
      break;
    case ExperimentKind::overhead_tradeoff:
      if (budgets.empty()) throw std::invalid_argument("budget list must be non-empty");
      for (int b : budgets)
        if (b < 1) throw std::invalid_argument("budgets must be >= 1");
      break;
  }
  if (!(perturbation_scale >= 0.0)) throw std::invalid_argument("perturbation_scale must be >= 0");
  ScenarioDistribution d = distribution;
  d.num_transmitters = 1;
  d.validate();
}

void apply_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  value = trim(value);
  auto& d = cfg.distribution;
  if (key == "experiment") cfg.experiment = parse_experiment_name(value);
  else if (key == "trials") cfg.trials = parse_number<int>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "N_list") cfg.n_list = parse_int_list(value);
  else if (key == "M_list") cfg.m_list = parse_int_list(value);
  else if (key == "budgets") cfg.budgets = parse_int_list(value);
  else if (key == "N") cfg.protocol_intervals = parse_number<int>(key, value);
  else if (key == "horizon") cfg.horizon = parse_number<int>(key, value);
  else if (key == "perturbation_scale") cfg.perturbation_scale = parse_number<double>(key, value);
  else if (key == "c0") d.c0 = parse_number<double>(key, value);
  else if (key == "r0") d.r0 = parse_number<double>(key, value);
  else if (key == "delta") d.delta = parse_number<double>(key, value);
  else if (key == "r_min") d.r_min = parse_number<double>(key, value);
  else if (key == "r_max") d.r_max = parse_number<double>(key, value);
  else if (key == "P") d.transmit_power = parse_number<double>(key, value);
  else if (key == "rho") d.conversion_eff = parse_number<double>(key, value);
  else if (key == "fc") d.carrier_freq = parse_number<double>(key, value);
  else if (key == "out") cfg.out_dir = std::string(value);
  else throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    apply_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

std::string to_text(const ExperimentConfig& cfg) {
  const auto& d = cfg.distribution;
  std::ostringstream os;
  os << "experiment = " << experiment_name(cfg.experiment) << '\n'
     << "trials = " << cfg.trials << '\n'
     << "seed = " << cfg.seed << '\n'
     << "N_list = " << join(cfg.n_list) << '\n'
     << "M_list = " << join(cfg.m_list) << '\n'
     << "budgets = " << join(cfg.budgets) << '\n'
     << "N = " << cfg.protocol_intervals << '\n'
     << "horizon = " << cfg.horizon << '\n'
     << "perturbation_scale = " << fmt_double(cfg.perturbation_scale) << '\n'
     << "c0 = " << fmt_double(d.c0) << '\n'
     << "r0 = " << fmt_double(d.r0) << '\n'
     << "delta = " << fmt_double(d.delta) << '\n'
     << "r_min = " << fmt_double(d.r_min) << '\n'
     << "r_max = " << fmt_double(d.r_max) << '\n'
     << "P = " << fmt_double(d.transmit_power) << '\n'
     << "rho = " << fmt_double(d.conversion_eff) << '\n'
     << "fc = " << fmt_double(d.carrier_freq) << '\n'
     << "out = " << cfg.out_dir << '\n';
  return os.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  ExperimentConfig located = cfg;
  located.out_dir.clear();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : to_text(located)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dwet
