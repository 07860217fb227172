#pragma once

#include "toric/report.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace toric::cli {

enum ExitCode : int {
  kOk = 0,
  kReplayFailure = 1,  // also a failing verify-paper case
  kInputError = 2,     // parse errors, bad configurations, unknown case
  kCapExceeded = 3,
};

/// Runs one command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CaseResult {
  bool pass = false;
  std::string detail;  // one line per check
  Json evidence;       // written next to the PASS/FAIL line
};

/// Names accepted by verify-paper --case, in --all order.
const std::vector<std::string>& case_names();
/// Throws std::out_of_range for an unknown name.
CaseResult run_case(const std::string& name);

}  // namespace toric::cli
