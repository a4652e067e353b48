#pragma once

#include <iosfwd>

namespace aclens::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kFindings = 1,
  kSnapshotError = 2,
  kPathError = 3,
  kPrincipalError = 4,
};

/// Runs one aclens command. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aclens::cli
