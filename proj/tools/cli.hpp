// SPDX-License-Identifier: Apache-2.0
//
// The edusat command line: solve, smt, npc, gen, viz and bench subcommands.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace edusat::cli {

enum ExitCode : int {
  kSat = 0,
  kUnsat = 1,
  kUsage = 2,
  kUnknown = 3,
  kValidation = 4,
};

/// Runs one command line. `args` excludes the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace edusat::cli
