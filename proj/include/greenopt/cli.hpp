#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "greenopt/config.hpp"

namespace greenopt {

enum ExitCode : int {
  exit_ok = 0,
  exit_criteria_failed = 1,
  exit_usage = 2,
  exit_solver_failure = 3,
};

struct ValidationRow {
  double separation = 0.0;
  double numeric = 0.0;   // calibrated
  double analytic = 0.0;
  double relative_error = 0.0;
  bool excluded = false;  // below four cells, not judged
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  double reference_separation = 0.0;
  double calibration = 1.0;  // analytic / raw numeric at the reference
  bool pass = false;
  std::optional<double> first_failure;
};

/// Fixed-orientation vacuum transfer rate along the donor-to-acceptor axis,
/// numeric (one donor solve, probed at every separation) against the closed
/// form, after matching the two at the reference separation.
/// Throws ConfigError for an empty sweep.
ValidationReport validation_sweep(const RunConfig& cfg);

struct CliOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<std::string> preset;
  std::optional<int> snapshot_every;
};

int cmd_validate(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_baseline(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_optimize(const CliOptions& opts, std::ostream& out, std::ostream& err);
int cmd_deltamap(const CliOptions& opts, std::ostream& out, std::ostream& err);

/// Parses `validate | baseline | optimize | deltamap` with their flags and
/// dispatches. Returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace greenopt
