#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace hkc::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(std::string(key) + ": expected a finite number, got '" + s + "'");
}

int to_int(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + s + "'");
  }
  return v;
}

}  // namespace

int RunConfig::length_or_default() const {
  return length.value_or(command == "verify" ? 8 : 100);
}

double RunConfig::alpha_or_default() const {
  return alpha.value_or(command == "quench" ? 0.7 : 0.5);
}

double RunConfig::jh_or_default() const {
  return jh.value_or(command == "quench" ? 0.5 : 0.0);
}

ChainSpec RunConfig::chain() const {
  ChainSpec s;
  s.length = length_or_default();
  s.split = split.value_or(s.length / 2);
  s.layout = layout;
  s.hopping = hopping;
  s.pairing = pairing;
  s.chemical_potential = mu;
  s.lr_exponent = alpha_or_default();
  s.interface_coupling = jh_or_default();
  return s;
}

QuenchParams RunConfig::quench() const {
  QuenchParams q;
  q.length = length_or_default();
  q.split = split.value_or(q.length / 2);
  q.interface_coupling = jh_or_default();
  q.lr_exponent = alpha_or_default();
  q.chemical_potential = mu;
  q.hopping = hopping;
  q.pairing = pairing;
  q.phase = phase;
  q.tol_zero = tol_zero;
  return q;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["layout"] = std::string(to_string(layout));
  j["L"] = length_or_default();
  j["l1"] = split.value_or(length_or_default() / 2);
  j["j"] = hopping;
  j["delta"] = pairing;
  j["mu"] = mu;
  j["alpha"] = alpha_or_default();
  j["jh"] = jh_or_default();
  j["mu-grid"] = mu_grid;
  j["tmax"] = tmax;
  j["dt"] = dt;
  j["theta"] = theta;
  j["tol-zero"] = tol_zero;
  j["tol"] = tol;
  j["phase"] = std::string(to_string(phase));
  j["out"] = out.string();
  j["workers"] = workers;
  j["suite"] = suite;
  return j;
}

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = {
      "layout", "L",     "l1",       "j",     "delta", "mu",  "alpha",
      "jh",     "mu-grid", "tmax",   "dt",    "theta", "tol-zero", "tol",
      "phase",  "out",   "workers"};
  return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  if (key == "layout") {
    auto l = parse_layout(v);
    if (!l) throw ConfigError("layout: expected nn, lr, hybrid-nn-lr or hybrid-lr-nn, got '" + v + "'");
    cfg.layout = *l;
  } else if (key == "L") {
    cfg.length = to_int(key, v);
  } else if (key == "l1") {
    cfg.split = to_int(key, v);
  } else if (key == "j") {
    cfg.hopping = to_double(key, v);
  } else if (key == "delta") {
    cfg.pairing = to_double(key, v);
  } else if (key == "mu") {
    if (v.find(':') != std::string::npos) {
      parse_grid(v);
      cfg.mu_grid = v;
    } else {
      cfg.mu = to_double(key, v);
    }
  } else if (key == "alpha") {
    cfg.alpha = to_double(key, v);
  } else if (key == "jh") {
    cfg.jh = to_double(key, v);
  } else if (key == "mu-grid") {
    parse_grid(v);
    cfg.mu_grid = v;
  } else if (key == "tmax") {
    cfg.tmax = to_double(key, v);
  } else if (key == "dt") {
    cfg.dt = to_double(key, v);
  } else if (key == "theta") {
    cfg.theta = to_double(key, v);
  } else if (key == "tol-zero") {
    cfg.tol_zero = to_double(key, v);
    if (!(cfg.tol_zero > 0.0)) throw ConfigError("tol-zero: must be > 0");
  } else if (key == "tol") {
    cfg.tol = to_double(key, v);
    if (!(cfg.tol > 0.0)) throw ConfigError("tol: must be > 0");
  } else if (key == "phase") {
    auto p = parse_phase(v);
    if (!p) throw ConfigError("phase: expected real or imaginary, got '" + v + "'");
    cfg.phase = *p;
  } else if (key == "out") {
    cfg.out = v;
  } else if (key == "workers") {
    cfg.workers = to_int(key, v);
    if (cfg.workers < 0) throw ConfigError("workers: must be >= 0");
  } else {
    throw ConfigError("unknown setting '" + std::string(key) + "'");
  }
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    out[key] = trim(std::string_view(t).substr(eq + 1));
  }
  return out;
}

std::vector<double> parse_grid(std::string_view text) {
  const std::string s = trim(text);
  const auto a = s.find(':');
  const auto b = a == std::string::npos ? a : s.find(':', a + 1);
  if (b == std::string::npos || s.find(':', b + 1) != std::string::npos) {
    throw ConfigError("mu-grid: expected start:stop:count, got '" + s + "'");
  }
  const double start = to_double("mu-grid start", s.substr(0, a));
  const double stop = to_double("mu-grid stop", s.substr(a + 1, b - a - 1));
  const int count = to_int("mu-grid count", s.substr(b + 1));
  if (count < 1) throw ConfigError("mu-grid: count must be >= 1");
  return linspace(start, stop, count);
}

}  // namespace hkc::cli
