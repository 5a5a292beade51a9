#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "squidom/config.hpp"

namespace squidom {

enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_validation = 2,
  exit_violation = 3,
  exit_nonconvergence = 4,
};

struct CliOptions {
  std::filesystem::path out = "out";
  bool strict = false;
  std::optional<long long> seed;  // reserved
};

const std::vector<std::string>& commands();
std::string usage();

/// Runs one command and writes report.json, data.csv and config.resolved.json
/// into options.out. Prints a short summary to `out`, diagnostics to `err`.
int dispatch(const std::string& command, RunConfig config, const CliOptions& options, std::ostream& out,
             std::ostream& err);

/// Full command-line entry point.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace squidom
