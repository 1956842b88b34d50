#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fama/errors.hpp"
#include "fama/patterns.hpp"
#include "fama/ports.hpp"

namespace fama {

// Rician finite-scattering environment: specular-to-scattered power ratio K,
// mean channel power Omega, and number of scattered paths.
struct ScatteringEnvironment {
  double k_factor = 20.0;
  double omega = 1.0;
  int n_paths = 5;

  // Amplitude of the specular term, sqrt(K*Omega/(K+1)).
  double specular_amplitude() const;
  // Per-path variance of a scattered coefficient, Omega/((K+1)*Np).
  double scattered_path_variance() const;
  void validate() const;
};

// Sampled path variables for one (BS antenna j, user i) link.
struct PathGroup {
  double los_phase_rad = 0.0;  // uniform on [0, 2*pi)
  double los_aoa_deg = 0.0;    // uniform on [0, 360)
  std::vector<std::complex<double>> scattered_coeff;  // CSCG, length Np
  std::vector<double> scattered_aoa_deg;              // uniform, length Np
};

// All path variables of one realization: an m x m grid of PathGroup,
// indexed by (BS antenna j, user i), both 0-based.
class PathVariables {
 public:
  PathVariables(int m_users, int n_paths);

  int m_users() const { return m_; }
  const PathGroup& at(int j, int i) const { return groups_[idx(j, i)]; }
  PathGroup& at(int j, int i) { return groups_[idx(j, i)]; }

 private:
  std::size_t idx(int j, int i) const {
    return static_cast<std::size_t>(j) * m_ + i;
  }
  int m_;
  std::vector<PathGroup> groups_;
};

// Draws path variables for every (j, i) link. Each link uses its own
// counter-derived substream of `seed`, so the draws for link (j, i) do not
// depend on m_users; adding a user leaves existing links untouched.
PathVariables sample_paths(const ScatteringEnvironment& env, int m_users,
                           std::uint64_t seed);

// Unweighted channel at one port: specular term plus the scattered sum,
// each path rotated by the port's spatial phase.
std::complex<double> theoretical_channel(const PathVariables& paths,
                                         const ScatteringEnvironment& env,
                                         const Port& port, int j, int i);

// Pattern-weighted received channel: every path term additionally carries
// the amplitude gain sqrt(G(aoa)) of the port's pattern, so received power
// scales with the power gain in the arrival direction.
std::complex<double> apply_pattern(const PathVariables& paths,
                                   const ScatteringEnvironment& env,
                                   const Port& port,
                                   const PatternSet& patterns, int j, int i);

// Received-channel tensor h(j, i, k) over all ports, plus the path
// variables it was derived from. Port-to-port correlation comes solely from
// the shared path variables.
class ChannelRealization {
 public:
  ChannelRealization(int m_users, int n_ports,
                     std::vector<std::complex<double>> h,
                     ScatteringEnvironment env);

  int m_users() const { return m_; }
  int n_ports() const { return n_; }
  const ScatteringEnvironment& env() const { return env_; }

  std::complex<double> h(int j, int i, int k) const {
    return h_[(static_cast<std::size_t>(j) * m_ + i) * n_ + k];
  }
  double h_power(int j, int i, int k) const { return std::norm(h(j, i, k)); }

 private:
  int m_;
  int n_;
  std::vector<std::complex<double>> h_;
  ScatteringEnvironment env_;
};

// Samples paths once per (j, i) and fills h for every port from those
// shared variables. Deterministic given the seed.
ChannelRealization realize(const ScatteringEnvironment& env, int m_users,
                           const PortSet& ports, const PatternSet& patterns,
                           std::uint64_t seed);

}  // namespace fama
