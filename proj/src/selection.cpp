#include "fama/selection.hpp"

#include <cmath>
#include <random>

#include "fama/rng.hpp"

namespace fama {

double LinkBudget::snr_db(double omega) const {
  return 10.0 * std::log10(tx_power.at(0) * omega / noise_var);
}

LinkBudget LinkBudget::from_snr_db(double snr_db, int m_users, double omega,
                                   double gamma_db, double noise_var) {
  LinkBudget b;
  double p = noise_var * std::pow(10.0, snr_db / 10.0) / omega;
  b.tx_power.assign(static_cast<std::size_t>(m_users), p);
  b.noise_var = noise_var;
  b.gamma = std::pow(10.0, gamma_db / 10.0);
  return b;
}

void LinkBudget::validate(int m_users) const {
  if (tx_power.size() != static_cast<std::size_t>(m_users)) {
    throw ConfigError("tx_power vector length does not match the user count");
  }
  for (double p : tx_power) {
    if (!(p > 0.0)) throw ConfigError("tx_power entries must be > 0");
  }
  if (!(noise_var > 0.0)) throw ConfigError("noise_var must be > 0");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be > 0");
}

std::string SelectionStrategy::name() const {
  switch (kind) {
    case Kind::kDynamicMaxSinr:
      return "dynamic";
    case Kind::kStaticRandomPort:
      return "static";
    case Kind::kFixedPort:
      return "fixed:" + std::to_string(fixed_port + 1);
  }
  return "?";
}

double sinr_at_port(const ChannelRealization& real, const LinkBudget& budget,
                    int user, int port) {
  const int m = real.m_users();
  double signal = budget.tx_power[static_cast<std::size_t>(user)] *
                  real.h_power(user, user, port);
  double denom = budget.noise_var;
  for (int j = 0; j < m; ++j) {
    if (j == user) continue;
    denom += budget.tx_power[static_cast<std::size_t>(j)] *
             real.h_power(j, user, port);
  }
  return signal / denom;
}

double sinr(const ChannelRealization& real, const LinkBudget& budget, int user,
            std::span<const int> chosen_ports) {
  return sinr_at_port(real, budget, user, chosen_ports[static_cast<std::size_t>(user)]);
}

std::vector<int> select_ports(const ChannelRealization& real,
                              const LinkBudget& budget,
                              const SelectionStrategy& strategy,
                              std::uint64_t seed) {
  const int m = real.m_users();
  const int n = real.n_ports();
  std::vector<int> chosen(static_cast<std::size_t>(m), 0);

  switch (strategy.kind) {
    case SelectionStrategy::Kind::kDynamicMaxSinr:
      for (int i = 0; i < m; ++i) {
        int best = 0;
        double best_sinr = sinr_at_port(real, budget, i, 0);
        for (int k = 1; k < n; ++k) {
          double s = sinr_at_port(real, budget, i, k);
          if (s > best_sinr) {  // ties keep the smallest index
            best_sinr = s;
            best = k;
          }
        }
        chosen[static_cast<std::size_t>(i)] = best;
      }
      break;
    case SelectionStrategy::Kind::kStaticRandomPort:
      for (int i = 0; i < m; ++i) {
        // Per-user substream, so user i's draw is independent of m.
        rng::SplitMix64 eng(rng::derive(seed, static_cast<std::uint64_t>(i)));
        std::uniform_int_distribution<int> pick(0, n - 1);
        chosen[static_cast<std::size_t>(i)] = pick(eng);
      }
      break;
    case SelectionStrategy::Kind::kFixedPort:
      if (strategy.fixed_port < 0 || strategy.fixed_port >= n) {
        throw ConfigError("fixed port index outside 1..N");
      }
      for (int i = 0; i < m; ++i) {
        chosen[static_cast<std::size_t>(i)] = strategy.fixed_port;
      }
      break;
  }
  return chosen;
}

bool outage_indicator(double sinr_value, double gamma) {
  return sinr_value < gamma;
}

double multiplexing_gain(int m_users, double outage_prob) {
  if (m_users < 1) throw ConfigError("m_users must be >= 1");
  if (!(outage_prob >= 0.0 && outage_prob <= 1.0)) {
    throw ConfigError("outage probability must lie in [0, 1]");
  }
  return m_users * (1.0 - outage_prob);
}

}  // namespace fama
