#pragma once

#include "config.hpp"
#include "output.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace hkc::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidConfig = 2,
  kExitPhysics = 3,
  kExitIo = 4,
};

struct CommandResult {
  std::vector<OutputFile> outputs;
  std::filesystem::path manifest;
  bool passed = true;  // verify only
};

// Each command writes its files into cfg.out, then the manifest.
CommandResult cmd_sweep(const RunConfig& cfg);
CommandResult cmd_modes(const RunConfig& cfg);
CommandResult cmd_quench(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg);

// Oracle specs checked by `verify --suite`.
std::vector<ChainSpec> verify_suite();

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace hkc::cli
