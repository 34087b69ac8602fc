#pragma once

#include <iosfwd>

namespace plap::cli {

enum ExitCode : int {
  ok = 0,
  usage = 1,
  config_error = 2,
  non_convergence = 3,
  verification_failed = 4,
};

/// Full command line entry point; diagnostics go to `err`, reports to `out`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace plap::cli
