#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vformation/errors.hpp"
#include "vformation/spacing.hpp"
#include "vformation/sweeps.hpp"

namespace vform::cli {

enum class Subcommand { Solve, Sweep, Optimize, StaggerCheck, Validate };

std::string_view to_string(Subcommand sub);

/// Process exit codes.
enum ExitCode : int { kSuccess = 0, kUsage = 1, kConfig = 2, kNumeric = 3 };

/// Bad command line. Maps to exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// `--help` was requested; `what()` is the help text. Maps to exit code 0.
class HelpRequested : public Error {
 public:
  using Error::Error;
};

struct Command {
  Subcommand subcommand = Subcommand::Solve;
  /// Config file path, or "-" for standard input (validate only).
  std::string config;
  std::filesystem::path out = ".";
  /// `<section>.<key>=<value>` assignments applied after parsing the config.
  std::vector<std::string> overrides;
  int jobs = 1;

  // sweep
  std::vector<SweepAxis> axes;

  // optimize
  SpacingAxis axis = SpacingAxis::Wts;
  double lo = -0.4;
  double hi = 0.8;
  double tolerance = 0.02;
  SpacingObjective objective = SpacingObjective::TrailingPower;
  int scan_points = 13;

  // stagger-check
  std::vector<double> offsets;
  bool frozen = false;
};

/// Parses argv (argv[0] is the program name). Throws UsageError for
/// unknown flags, missing or conflicting subcommands and malformed values,
/// HelpRequested for --help, and ConfigError when the config file does not
/// exist.
Command parse_invocation(int argc, const char* const* argv);

/// Runs a parsed command. Writes artifacts under `cmd.out` and a summary to
/// `out`. Library errors propagate.
void execute(const Command& cmd, std::istream& in, std::ostream& out);

/// Exit code for the exception currently being handled.
int exit_code_for(const std::exception_ptr& error);

/// parse_invocation + execute with every error mapped to an exit code and
/// reported on `err`.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace vform::cli
