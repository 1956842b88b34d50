#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fama/montecarlo.hpp"

namespace fama::cli {

inline constexpr const char* kToolVersion = "fama-sim 0.1.0";

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDataError = 3;
inline constexpr int kExitInternalError = 4;

// Command-line overrides applied on top of the config file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::uint64_t> trials;
};

// A parsed and resolved run configuration.
struct RunSpec {
  SimConfig base;
  SweepAxes axes;
  bool common_random_numbers = false;
  std::string pattern_file;  // empty unless patterns came from a file
};

// Parses and validates the JSON run config. Unknown keys are rejected with
// a message naming the key. `base_dir` resolves relative pattern paths.
RunSpec parse_run_config(const std::string& json_text,
                         const std::string& base_dir = ".");

// Results CSV, one row per sweep point:
// snr_db,m_users,strategy,antenna,n_trials,outage,ci_low,ci_high,mux_gain,seed
void write_results_csv(const std::vector<SimEstimate>& table,
                       std::ostream& out);

// Synthetic pattern generation options for `gen-patterns`.
struct GenOptions {
  int n_ports = 20;
  std::optional<int> grid_n1;  // set both for a two-channel grid set
  std::optional<int> grid_n2;
  SyntheticProfile profile;
};

// Command entry points. Messages go to `err`; files are written to the
// given paths. Return values are the exit codes above.
int cmd_run(const std::string& config_path, const std::string& output_path,
            const Overrides& overrides, std::ostream& err);
int cmd_rpdr(const std::string& pattern_path, const std::string& output_path,
             std::ostream& err);
int cmd_gen_patterns(const GenOptions& options, const std::string& output_path,
                     std::ostream& err);

}  // namespace fama::cli
