#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fama/channel.hpp"
#include "fama/patterns.hpp"
#include "fama/ports.hpp"
#include "fama/selection.hpp"

namespace fama {

// One simulation point: environment, antenna, users, budget, strategy,
// trial count, and the master seed all randomness derives from.
struct SimConfig {
  SimConfig(PortSet port_set, PatternSet pattern_set)
      : ports(std::move(port_set)), patterns(std::move(pattern_set)) {}

  ScatteringEnvironment env;
  int m_users = 1;
  PortSet ports;
  PatternSet patterns;
  std::string antenna_name = "custom";
  double snr_db = 20.0;
  double gamma_db = 0.0;
  double noise_var = 1.0;
  SelectionStrategy strategy = SelectionStrategy::dynamic();
  std::uint64_t n_trials = 1'000'000;
  std::uint64_t master_seed = 0;
  int n_threads = 1;

  LinkBudget budget() const {
    return LinkBudget::from_snr_db(snr_db, m_users, env.omega, gamma_db,
                                   noise_var);
  }
  void validate() const;
};

struct SimEstimate {
  double outage_hat = 0.0;
  double ci_low = 0.0;   // 95% normal-approximation interval
  double ci_high = 0.0;
  double mux_gain = 0.0;  // m_users * (1 - outage_hat)

  // Provenance / config echo.
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;
  double snr_db = 0.0;
  int m_users = 0;
  std::string strategy;
  std::string antenna;
};

struct ConfidenceInterval {
  double low;
  double high;
};

// 95% normal-approximation interval for a Bernoulli proportion,
// clamped to [0, 1].
ConfidenceInterval binomial_ci(std::uint64_t successes, std::uint64_t n);

// Stream roots used by estimate(); exposed so sub-range counts obtained via
// count_outages can be merged against a full estimate.
std::uint64_t path_stream_root(std::uint64_t master_seed);
std::uint64_t select_stream_root(std::uint64_t master_seed);

// Pooled per-(trial, user) outage count over trials [trial_begin, trial_end).
// Trial t's randomness is derived from the stream roots by counter, so the
// count is independent of how the range is partitioned across workers.
std::uint64_t count_outages(const SimConfig& config, std::uint64_t trial_begin,
                            std::uint64_t trial_end, std::uint64_t path_root,
                            std::uint64_t select_root);

// Runs config.n_trials trials on config.n_threads workers and pools the
// per-user outage indicators. Bit-identical for any worker count.
SimEstimate estimate(const SimConfig& config);

// Sweep axes; the Cartesian product with the template config gives one
// estimate per point.
struct SweepAxes {
  std::vector<double> snr_db;
  std::vector<int> m_users;
  std::vector<SelectionStrategy> strategies;
};

// Per-point seeds derive from the master seed by a stable hash of the point
// coordinates. With common random numbers, every point instead shares one
// path stream (and per-user selection streams), making the paired-dominance
// and monotonicity orderings exact in the output.
std::vector<SimEstimate> sweep(const SimConfig& base, const SweepAxes& axes,
                               bool common_random_numbers = false);

}  // namespace fama
