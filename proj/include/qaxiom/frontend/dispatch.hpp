#pragma once

#include <string>
#include <vector>

#include "qaxiom/frontend/report.hpp"

namespace qaxiom::frontend {

/// Exit codes: 0 success or passing verdict, 1 computed failing verdict,
/// 2 usage, parse or evaluation error.
struct CommandResult {
  int exit_code = 0;
  std::string out;  // what the process writes to stdout
  std::string err;  // what the process writes to stderr
  Json report;      // structured report (also the --json document)
};

/// Runs one command. `args` excludes the program name. Every report carries
/// the arguments verbatim under "input.argv".
CommandResult dispatch(const std::vector<std::string>& args);

/// Top-level usage text listing commands and flags.
std::string usage();

}  // namespace qaxiom::frontend
