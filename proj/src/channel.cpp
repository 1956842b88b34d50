#include "fama/channel.hpp"

#include <cmath>
#include <random>

#include "fama/rng.hpp"

namespace fama {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

std::uint64_t link_label(int j, int i) {
  return (static_cast<std::uint64_t>(j) << 32) | static_cast<std::uint32_t>(i);
}

}  // namespace

double ScatteringEnvironment::specular_amplitude() const {
  return std::sqrt(k_factor * omega / (k_factor + 1.0));
}

double ScatteringEnvironment::scattered_path_variance() const {
  if (n_paths == 0) return 0.0;
  return omega / ((k_factor + 1.0) * n_paths);
}

void ScatteringEnvironment::validate() const {
  if (!(k_factor >= 0.0)) throw ChannelError("K factor must be >= 0");
  if (!(omega > 0.0)) throw ChannelError("Omega must be > 0");
  if (n_paths < 0) throw ChannelError("Np must be >= 0");
  if (n_paths == 0 && k_factor == 0.0) {
    throw ChannelError("degenerate environment: Np = 0 with K = 0 carries no power");
  }
}

PathVariables::PathVariables(int m_users, int n_paths)
    : m_(m_users),
      groups_(static_cast<std::size_t>(m_users) * m_users) {
  for (auto& g : groups_) {
    g.scattered_coeff.resize(static_cast<std::size_t>(n_paths));
    g.scattered_aoa_deg.resize(static_cast<std::size_t>(n_paths));
  }
}

namespace {

void sample_group(const ScatteringEnvironment& env, PathGroup& g,
                  std::uint64_t seed) {
  rng::SplitMix64 eng(seed);
  std::uniform_real_distribution<double> u_phase(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> u_angle(0.0, 360.0);
  const double sigma = std::sqrt(env.scattered_path_variance() / 2.0);
  std::normal_distribution<double> gauss(0.0, sigma);

  g.los_phase_rad = u_phase(eng);
  g.los_aoa_deg = u_angle(eng);
  for (std::size_t l = 0; l < g.scattered_coeff.size(); ++l) {
    double re = gauss(eng);
    double im = gauss(eng);
    g.scattered_coeff[l] = {re, im};
    g.scattered_aoa_deg[l] = u_angle(eng);
  }
}

}  // namespace

PathVariables sample_paths(const ScatteringEnvironment& env, int m_users,
                           std::uint64_t seed) {
  env.validate();
  if (m_users < 1) throw ChannelError("m_users must be >= 1");
  PathVariables paths(m_users, env.n_paths);
  for (int j = 0; j < m_users; ++j) {
    for (int i = 0; i < m_users; ++i) {
      sample_group(env, paths.at(j, i), rng::derive(seed, link_label(j, i)));
    }
  }
  return paths;
}

std::complex<double> theoretical_channel(const PathVariables& paths,
                                         const ScatteringEnvironment& env,
                                         const Port& port, int j, int i) {
  const PathGroup& g = paths.at(j, i);
  std::complex<double> h = env.specular_amplitude() *
                           std::polar(1.0, g.los_phase_rad) *
                           spatial_phase(port, g.los_aoa_deg);
  for (std::size_t l = 0; l < g.scattered_coeff.size(); ++l) {
    h += g.scattered_coeff[l] * spatial_phase(port, g.scattered_aoa_deg[l]);
  }
  return h;
}

std::complex<double> apply_pattern(const PathVariables& paths,
                                   const ScatteringEnvironment& env,
                                   const Port& port,
                                   const PatternSet& patterns, int j, int i) {
  const PathGroup& g = paths.at(j, i);
  const RadiationPattern& pat = patterns[static_cast<std::size_t>(port.pattern_index)];
  std::complex<double> h = env.specular_amplitude() *
                           std::polar(1.0, g.los_phase_rad) *
                           spatial_phase(port, g.los_aoa_deg) *
                           pat.amplitude_at(g.los_aoa_deg);
  for (std::size_t l = 0; l < g.scattered_coeff.size(); ++l) {
    h += g.scattered_coeff[l] * spatial_phase(port, g.scattered_aoa_deg[l]) *
         pat.amplitude_at(g.scattered_aoa_deg[l]);
  }
  return h;
}

ChannelRealization::ChannelRealization(int m_users, int n_ports,
                                       std::vector<std::complex<double>> h,
                                       ScatteringEnvironment env)
    : m_(m_users), n_(n_ports), h_(std::move(h)), env_(env) {
  if (h_.size() != static_cast<std::size_t>(m_) * m_ * n_) {
    throw ChannelError("channel tensor has wrong dimensions");
  }
}

namespace {

// Accumulates one path term into h over all ports of one (j, i) link.
// For equally spaced ports the per-port phase advances by a constant
// rotation, which avoids a sincos per (path, port).
void accumulate_path(std::complex<double> coeff, double aoa_deg,
                     const PortSet& ports, const PatternSet& patterns,
                     std::complex<double>* h_link) {
  const std::size_t n = ports.size();
  const double cos_aoa = std::cos(aoa_deg * kDegToRad);
  if (ports.equally_spaced() && n > 1) {
    const double step = ports[1].position_norm - ports[0].position_norm;
    std::complex<double> rot =
        std::polar(1.0, -2.0 * M_PI * ports[0].position_norm * cos_aoa);
    const std::complex<double> inc =
        std::polar(1.0, -2.0 * M_PI * step * cos_aoa);
    for (std::size_t k = 0; k < n; ++k) {
      const RadiationPattern& pat =
          patterns[static_cast<std::size_t>(ports[k].pattern_index)];
      h_link[k] += coeff * pat.amplitude_at(aoa_deg) * rot;
      rot *= inc;
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) {
      const RadiationPattern& pat =
          patterns[static_cast<std::size_t>(ports[k].pattern_index)];
      h_link[k] += coeff * pat.amplitude_at(aoa_deg) *
                   spatial_phase(ports[k].position_norm, aoa_deg);
    }
  }
}

}  // namespace

ChannelRealization realize(const ScatteringEnvironment& env, int m_users,
                           const PortSet& ports, const PatternSet& patterns,
                           std::uint64_t seed) {
  env.validate();
  if (m_users < 1) throw ChannelError("m_users must be >= 1");
  for (const auto& p : ports) {
    if (p.pattern_index < 0 ||
        static_cast<std::size_t>(p.pattern_index) >= patterns.size()) {
      throw ConfigError("port pattern index does not resolve into the pattern set");
    }
  }

  const std::size_t m = static_cast<std::size_t>(m_users);
  const std::size_t n = ports.size();
  std::vector<std::complex<double>> h(m * m * n, {0.0, 0.0});

  PathGroup group;
  group.scattered_coeff.resize(static_cast<std::size_t>(env.n_paths));
  group.scattered_aoa_deg.resize(static_cast<std::size_t>(env.n_paths));
  const double spec_amp = env.specular_amplitude();

  for (int j = 0; j < m_users; ++j) {
    for (int i = 0; i < m_users; ++i) {
      sample_group(env, group, rng::derive(seed, link_label(j, i)));
      std::complex<double>* h_link = h.data() + (j * m + i) * n;
      accumulate_path(spec_amp * std::polar(1.0, group.los_phase_rad),
                      group.los_aoa_deg, ports, patterns, h_link);
      for (std::size_t l = 0; l < group.scattered_coeff.size(); ++l) {
        accumulate_path(group.scattered_coeff[l], group.scattered_aoa_deg[l],
                        ports, patterns, h_link);
      }
    }
  }
  return ChannelRealization(m_users, static_cast<int>(n), std::move(h), env);
}

}  // namespace fama
