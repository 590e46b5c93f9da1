#pragma once

#include <iosfwd>

namespace dps::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsage = 2,
  kValidationFailure = 3,
};

/// Entry point shared by the dps_cli binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dps::cli
