#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lowmach/sweep.hpp"

namespace lowmach::cli {

enum class Subcommand { Simulate, Sweep, FilterCheck, Report };

/// Exit statuses of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;

/// Parameters of filter-check.
struct FilterCheckParams {
  int dim = 2;
  int n = 32;
  double gamma = 2.0;
  double theta = 0.5;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;  // pass threshold for every residual
};

/// Settings of one invocation after flags and config file are merged.
struct RunConfig {
  Subcommand command = Subcommand::Simulate;
  SweepConfig params;  // simulate uses params.eps_list.front()
  std::filesystem::path output;
  int verbosity = 0;
  std::optional<double> mock_exponent;  // sweep only: skip the solver
  int field_every = 0;                  // simulate: fields every k snapshots, 0 = first and last
  FilterCheckParams filter;
  std::filesystem::path input;          // report: RateReport document
};

/// Parses arguments (without the program name). A `--config FILE` holds
/// key = value lines grouped in [simulate], [sweep], [filter-check] sections;
/// flags override file values. Throws Error(ConfigError) naming the offending
/// key, and returns nullopt when help was requested (text written to `out`).
std::optional<RunConfig> parse_config(const std::vector<std::string>& args, std::ostream& out);

/// Runs the selected pipeline and returns the exit status: 0 on pass, 1 on an
/// acceptance failure, 2 on a runtime error (reported on `err`).
int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_config followed by dispatch, with every error mapped to status 2.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lowmach::cli
