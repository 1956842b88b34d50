#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fama/channel.hpp"
#include "fama/errors.hpp"

namespace fama {

// Transmit powers, noise variance, and the linear SINR threshold.
struct LinkBudget {
  std::vector<double> tx_power;  // per user, linear
  double noise_var = 1.0;
  double gamma = 1.0;  // linear; 0 dB <=> 1.0

  // 10*log10(p * Omega / noise_var) for the common power level.
  double snr_db(double omega) const;

  // Equal per-user power chosen so that the transmit SNR is snr_db:
  // p = noise_var * 10^(snr/10) / Omega.
  static LinkBudget from_snr_db(double snr_db, int m_users, double omega,
                                double gamma_db, double noise_var = 1.0);

  void validate(int m_users) const;
};

struct SelectionStrategy {
  enum class Kind { kDynamicMaxSinr, kStaticRandomPort, kFixedPort };

  Kind kind = Kind::kDynamicMaxSinr;
  int fixed_port = 0;  // 0-based, used by kFixedPort

  static SelectionStrategy dynamic() { return {Kind::kDynamicMaxSinr, 0}; }
  static SelectionStrategy static_random() { return {Kind::kStaticRandomPort, 0}; }
  static SelectionStrategy fixed(int port) { return {Kind::kFixedPort, port}; }

  std::string name() const;  // "dynamic", "static", "fixed:<k>" (1-based k)
  bool operator==(const SelectionStrategy&) const = default;
};

// SINR of user i with every channel toward user i evaluated at user i's own
// port: p_i |h_{i,i}|^2 / (sum_{j != i} p_j |h_{j,i}|^2 + noise).
double sinr(const ChannelRealization& real, const LinkBudget& budget, int user,
            std::span<const int> chosen_ports);

// Same, with a single port index for user i (other users' ports are
// irrelevant to user i's SINR).
double sinr_at_port(const ChannelRealization& real, const LinkBudget& budget,
                    int user, int port);

// Per-user chosen ports (0-based). Dynamic picks argmax_k SINR_i(k) with
// ties broken toward the smallest index; static draws uniformly per user
// from a per-user substream of `seed`; fixed returns the configured port.
std::vector<int> select_ports(const ChannelRealization& real,
                              const LinkBudget& budget,
                              const SelectionStrategy& strategy,
                              std::uint64_t seed);

// Strict comparison: SINR exactly at the threshold is not an outage.
bool outage_indicator(double sinr_value, double gamma);

// Capacity scaling factor m = M * (1 - outage probability).
double multiplexing_gain(int m_users, double outage_prob);

}  // namespace fama
