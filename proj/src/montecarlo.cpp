#include "fama/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <thread>

#include "fama/rng.hpp"

namespace fama {

namespace {

// Stream labels separating the independent randomness consumers.
constexpr std::uint64_t kPathStream = 0x7061746873ULL;    // channel paths
constexpr std::uint64_t kSelectStream = 0x73656c6563ULL;  // static port draws
constexpr std::uint64_t kCrnStream = 0x63726eULL;         // shared-CRN root

std::uint64_t point_label(double snr_db, int m_users,
                          const SelectionStrategy& strategy) {
  std::uint64_t snr_bits;
  static_assert(sizeof(snr_bits) == sizeof(snr_db));
  std::memcpy(&snr_bits, &snr_db, sizeof(snr_bits));
  std::uint64_t x = rng::hash64(snr_bits);
  x = rng::hash64(x ^ static_cast<std::uint64_t>(m_users));
  x = rng::hash64(x ^ (static_cast<std::uint64_t>(strategy.kind) << 32 |
                       static_cast<std::uint32_t>(strategy.fixed_port)));
  return x;
}

SimEstimate finalize(const SimConfig& config, std::uint64_t outages) {
  const std::uint64_t n_ind =
      config.n_trials * static_cast<std::uint64_t>(config.m_users);
  SimEstimate est;
  est.outage_hat = static_cast<double>(outages) / static_cast<double>(n_ind);
  auto ci = binomial_ci(outages, n_ind);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  est.mux_gain = multiplexing_gain(config.m_users, est.outage_hat);
  est.n_trials = config.n_trials;
  est.seed = config.master_seed;
  est.snr_db = config.snr_db;
  est.m_users = config.m_users;
  est.strategy = config.strategy.name();
  est.antenna = config.antenna_name;
  return est;
}

SimEstimate estimate_with_roots(const SimConfig& config,
                                std::uint64_t path_root,
                                std::uint64_t select_root) {
  config.validate();
  const int threads = std::max(1, config.n_threads);
  std::uint64_t outages = 0;
  if (threads == 1 || config.n_trials < 2) {
    outages = count_outages(config, 0, config.n_trials, path_root, select_root);
  } else {
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(threads), 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (config.n_trials + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const std::uint64_t begin = std::min<std::uint64_t>(t * chunk, config.n_trials);
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, config.n_trials);
      pool.emplace_back([&, t, begin, end] {
        partial[static_cast<std::size_t>(t)] =
            count_outages(config, begin, end, path_root, select_root);
      });
    }
    for (auto& th : pool) th.join();
    for (std::uint64_t p : partial) outages += p;
  }
  return finalize(config, outages);
}

}  // namespace

void SimConfig::validate() const {
  env.validate();
  if (m_users < 1) throw ConfigError("m_users must be >= 1");
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  budget().validate(m_users);
  for (const auto& p : ports) {
    if (p.pattern_index < 0 ||
        static_cast<std::size_t>(p.pattern_index) >= patterns.size()) {
      throw ConfigError("port pattern index does not resolve into the pattern set");
    }
  }
}

ConfidenceInterval binomial_ci(std::uint64_t successes, std::uint64_t n) {
  const double phat = static_cast<double>(successes) / static_cast<double>(n);
  const double half =
      1.96 * std::sqrt(phat * (1.0 - phat) / static_cast<double>(n));
  return {std::max(0.0, phat - half), std::min(1.0, phat + half)};
}

std::uint64_t count_outages(const SimConfig& config, std::uint64_t trial_begin,
                            std::uint64_t trial_end, std::uint64_t path_root,
                            std::uint64_t select_root) {
  const LinkBudget budget = config.budget();
  std::uint64_t outages = 0;
  for (std::uint64_t t = trial_begin; t < trial_end; ++t) {
    ChannelRealization real =
        realize(config.env, config.m_users, config.ports, config.patterns,
                rng::derive(path_root, t));
    std::vector<int> chosen = select_ports(real, budget, config.strategy,
                                           rng::derive(select_root, t));
    for (int i = 0; i < config.m_users; ++i) {
      if (outage_indicator(sinr(real, budget, i, chosen), budget.gamma)) {
        ++outages;
      }
    }
  }
  return outages;
}

std::uint64_t path_stream_root(std::uint64_t master_seed) {
  return rng::derive(master_seed, kPathStream);
}

std::uint64_t select_stream_root(std::uint64_t master_seed) {
  return rng::derive(master_seed, kSelectStream);
}

SimEstimate estimate(const SimConfig& config) {
  return estimate_with_roots(config, path_stream_root(config.master_seed),
                             select_stream_root(config.master_seed));
}

std::vector<SimEstimate> sweep(const SimConfig& base, const SweepAxes& axes,
                               bool common_random_numbers) {
  if (axes.snr_db.empty() || axes.m_users.empty() || axes.strategies.empty()) {
    throw ConfigError("sweep axes must be non-empty");
  }
  std::vector<SimEstimate> table;
  table.reserve(axes.snr_db.size() * axes.m_users.size() *
                axes.strategies.size());
  const std::uint64_t crn_root = rng::derive(base.master_seed, kCrnStream);
  for (int m : axes.m_users) {
    for (const auto& strategy : axes.strategies) {
      for (double snr : axes.snr_db) {
        SimConfig point = base;
        point.m_users = m;
        point.strategy = strategy;
        point.snr_db = snr;
        std::uint64_t path_root, select_root;
        if (common_random_numbers) {
          path_root = rng::derive(crn_root, kPathStream);
          select_root = rng::derive(crn_root, kSelectStream);
        } else {
          const std::uint64_t point_seed =
              rng::derive(base.master_seed, point_label(snr, m, strategy));
          path_root = rng::derive(point_seed, kPathStream);
          select_root = rng::derive(point_seed, kSelectStream);
        }
        table.push_back(estimate_with_roots(point, path_root, select_root));
      }
    }
  }
  return table;
}

}  // namespace fama
