#pragma once

// Command dispatch for the hamgeom tool. Each subcommand runs every request
// of the matching kind in the system file and collects one JSON report.
//
// Exit codes: 0 success (verdicts may be false), 1 input or parse error,
// 2 analysis failure.

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace hamgeom::cli {

struct RunOptions {
  std::string command;
  std::string file;
  std::optional<std::string> compare;
  std::optional<std::string> out;
  std::optional<std::string> csv_dir;
  bool dump_trajectories = false;
  std::uint64_t seed = 42;
  double rtol = 1e-10;
  double atol = 1e-12;
  double eps = 1e-6;
  double tmax = 1e3;
};

struct RunOutcome {
  int exit_code = 0;
  std::optional<nlohmann::ordered_json> report;  // absent on input errors
  std::string message;                           // diagnostics for stderr
};

inline constexpr const char* kSchemaVersion = "1";

std::uint64_t fnv1a64(std::string_view bytes);

/// Runs a command without touching stdout; CSV side files are written when
/// csv_dir is set.
RunOutcome run(const RunOptions& options);

/// Runs and writes the report to `out` (or the --out file) and diagnostics to `err`.
int run_main(const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace hamgeom::cli
