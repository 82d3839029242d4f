#pragma once

#include "hkc/dynamics.hpp"
#include "hkc/errors.hpp"
#include "hkc/model.hpp"
#include "hkc/spectral.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hkc::cli {

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "HKC_OUTPUT_DIR";

class ConfigError : public InvalidSpec {
 public:
  using InvalidSpec::InvalidSpec;
};

class IoError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  Layout layout = Layout::PureNN;
  std::optional<int> length;   // default per command
  std::optional<int> split;  // default: length / 2
  double hopping = 1.0;
  double pairing = 1.0;
  double mu = 0.0;
  std::optional<double> alpha;  // default per command
  std::optional<double> jh;     // default per command
  std::string mu_grid = "-4:4:401";
  double tmax = 50.0;
  double dt = 0.1;
  double theta = 1.0;
  double tol_zero = kDefaultTolZero;
  double tol = 1e-9;
  SuperpositionPhase phase = SuperpositionPhase::Imaginary;
  std::filesystem::path out;
  int workers = 0;
  bool suite = false;

  int length_or_default() const;
  double alpha_or_default() const;
  double jh_or_default() const;
  ChainSpec chain() const;
  QuenchParams quench() const;
  nlohmann::json to_json() const;
};

// Accepted keys, shared by flags (as --key, or -L) and config files.
const std::vector<std::string>& setting_keys();

// Parses `value` into the field named by `key`. Throws ConfigError.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

// key=value lines; blank lines and lines starting with '#' are skipped.
// Throws IoError if unreadable, ConfigError on malformed lines.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

// "start:stop:count", inclusive of both ends.
std::vector<double> parse_grid(std::string_view text);

}  // namespace hkc::cli
