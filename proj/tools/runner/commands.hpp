#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace semiaffine::runner {

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"stationary", "sphere-avg", "path-avg",    "acim",
                                                 "steer",      "approx-seq", "coincidence", "holder-cert",
                                                 "rotation",   "verify"};
  return names;
}

/// Runs one subcommand, writing its artifacts and run.json under config.out.
/// Returns the process exit status; hard-assertion failures give 1.
int run_command(const std::string& name, const RunConfig& config, std::ostream& log);

}  // namespace semiaffine::runner
