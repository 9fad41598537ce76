#pragma once

#include "blowdown/json_value.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace blowdown::cli {

enum class Status { pass, warn, fail };

const char* to_string(Status s);

enum ExitCode : int { kOk = 0, kExpectationMismatch = 1, kValidationFailure = 2, kUsageError = 3 };

struct ExpectationDiff {
  std::string field;
  std::string expected;
  std::string actual;
};

/// Outcome of one invocation. `payload` holds the command's result (table, group,
/// invariants, continued fraction, membership) in the shape printed by --json.
struct RunReport {
  std::string command;
  std::string fixture;
  Status status = Status::pass;
  JsonValue payload;
  std::vector<ExpectationDiff> diffs;
  std::vector<std::string> warnings;
  std::string error;
  int exit_code = kOk;

  JsonValue to_json() const;
};

/// Runs one command line (without the program name). Text or JSON goes to out,
/// diagnostics to err.
RunReport run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace blowdown::cli
