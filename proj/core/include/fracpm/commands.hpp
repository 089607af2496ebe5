#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "fracpm/config.hpp"

namespace fracpm {

/// Command line options shared by all subcommands.
struct CommandOptions {
  std::optional<std::filesystem::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  bool list = false;
};

/// S, alpha(H) and weight fields plus fit_report.json.
int cmd_fracfield(const RunConfig& cfg, std::ostream& log);
/// trajectory.csv and snapshot_NNNN.field files; on blow-up also last_good.field.
int cmd_evolve(const RunConfig& cfg, std::ostream& log);
/// spectrum.json and eigenvalues.csv.
int cmd_spectrum(const RunConfig& cfg, std::ostream& log);
/// Runs (or lists) the acceptance suite; writes verify_summary.json. Returns 1
/// when a criterion fails.
int cmd_verify(const RunConfig& cfg, bool list, std::ostream& log);

/// Loads the config, applies overrides, dispatches, and maps errors to exit
/// codes (messages go to `err`).
int run_command(const std::string& name, const CommandOptions& options, std::ostream& log, std::ostream& err);

}  // namespace fracpm
