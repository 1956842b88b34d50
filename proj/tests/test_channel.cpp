#include <doctest.h>

#include <cmath>
#include <complex>

#include "fama/channel.hpp"
#include "fama/rng.hpp"

using namespace fama;
using std::complex;

namespace {

PatternSet omni1() { return make_omni_set(1); }

Port port_at(double position) { return Port{1, position, 0}; }

}  // namespace

TEST_CASE("degenerate zero-power environment is rejected") {
  ScatteringEnvironment env{0.0, 1.0, 0};
  CHECK_THROWS_AS(sample_paths(env, 1, 1), ChannelError);
  CHECK_THROWS_AS((ScatteringEnvironment{-1.0, 1.0, 5}.validate()), ChannelError);
  CHECK_THROWS_AS((ScatteringEnvironment{1.0, 0.0, 5}.validate()), ChannelError);
}

TEST_CASE("per-path scattered variance follows Omega/((K+1)Np)") {
  ScatteringEnvironment env{0.0, 2.0, 3};
  CHECK(env.scattered_path_variance() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  // sample-mean oracle over many draws
  double sum = 0.0;
  std::size_t count = 0;
  for (std::uint64_t s = 0; s < 30000; ++s) {
    PathVariables paths = sample_paths(env, 1, s);
    for (const auto& c : paths.at(0, 0).scattered_coeff) {
      sum += std::norm(c);
      ++count;
    }
  }
  CHECK(sum / count == doctest::Approx(2.0 / 3.0).epsilon(0.02));
}

TEST_CASE("huge K concentrates |g| at sqrt(Omega)") {
  ScatteringEnvironment env{1e9, 1.0, 5};
  Port p0 = port_at(0.0);
  for (std::uint64_t s = 0; s < 100; ++s) {
    PathVariables paths = sample_paths(env, 1, s);
    double mag = std::abs(theoretical_channel(paths, env, p0, 0, 0));
    CHECK(mag == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("sample mean of |g|^2 matches Omega") {
  ScatteringEnvironment env{20.0, 1.0, 5};
  Port p0 = port_at(0.3);
  double sum = 0.0;
  const int n = 200000;
  for (int s = 0; s < n; ++s) {
    PathVariables paths = sample_paths(env, 1, static_cast<std::uint64_t>(s));
    sum += std::norm(theoretical_channel(paths, env, p0, 0, 0));
  }
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("specular to scattered power ratio matches K") {
  ScatteringEnvironment env{20.0, 1.0, 5};
  Port p0 = port_at(0.0);
  double spec = 0.0, scat = 0.0;
  const int n = 200000;
  for (int s = 0; s < n; ++s) {
    PathVariables paths = sample_paths(env, 1, static_cast<std::uint64_t>(s));
    const PathGroup& g = paths.at(0, 0);
    spec += env.k_factor * env.omega / (env.k_factor + 1.0);
    complex<double> sum{0.0, 0.0};
    for (const auto& c : g.scattered_coeff) sum += c;
    scat += std::norm(sum);
  }
  CHECK(spec / scat == doctest::Approx(20.0).epsilon(0.05));
}

TEST_CASE("no scattered paths: channel is the pure specular term") {
  ScatteringEnvironment env{4.0, 1.0, 0};
  PathVariables paths = sample_paths(env, 1, 42);
  Port p0 = port_at(0.0);
  complex<double> g = theoretical_channel(paths, env, p0, 0, 0);
  complex<double> expect = env.specular_amplitude() *
                           std::polar(1.0, paths.at(0, 0).los_phase_rad);
  CHECK(std::abs(g - expect) < 1e-15);
}

TEST_CASE("at position zero the channel ignores arrival angles") {
  ScatteringEnvironment env{2.0, 1.0, 3};
  PathVariables paths = sample_paths(env, 1, 7);
  Port p0 = port_at(0.0);
  complex<double> g = theoretical_channel(paths, env, p0, 0, 0);
  // hand sum without any spatial phase
  complex<double> expect = env.specular_amplitude() *
                           std::polar(1.0, paths.at(0, 0).los_phase_rad);
  for (const auto& c : paths.at(0, 0).scattered_coeff) expect += c;
  CHECK(std::abs(g - expect) < 1e-14);
}

TEST_CASE("theoretical channel equals a term-by-term summation oracle") {
  ScatteringEnvironment env{1.0, 1.0, 3};
  for (std::uint64_t s = 0; s < 50; ++s) {
    PathVariables paths = sample_paths(env, 2, s);
    for (double pos : {0.0, 0.25, 0.81}) {
      Port port = port_at(pos);
      for (int j = 0; j < 2; ++j) {
        for (int i = 0; i < 2; ++i) {
          const PathGroup& g = paths.at(j, i);
          complex<double> expect =
              env.specular_amplitude() * std::polar(1.0, g.los_phase_rad) *
              spatial_phase(pos, g.los_aoa_deg);
          for (std::size_t l = 0; l < g.scattered_coeff.size(); ++l) {
            expect += g.scattered_coeff[l] *
                      spatial_phase(pos, g.scattered_aoa_deg[l]);
          }
          CHECK(std::abs(theoretical_channel(paths, env, port, j, i) - expect) <
                1e-12);
        }
      }
    }
  }
}

TEST_CASE("omni weighting reproduces the theoretical channel bit for bit") {
  ScatteringEnvironment env{20.0, 1.0, 5};
  PatternSet omni = omni1();
  PathVariables paths = sample_paths(env, 2, 99);
  for (double pos : {0.0, 0.4}) {
    Port port = port_at(pos);
    for (int j = 0; j < 2; ++j) {
      for (int i = 0; i < 2; ++i) {
        CHECK(apply_pattern(paths, env, port, omni, j, i) ==
              theoretical_channel(paths, env, port, j, i));
      }
    }
  }
}

TEST_CASE("a constant gain pattern scales received power uniformly") {
  ScatteringEnvironment env{20.0, 1.0, 5};
  PatternSet boosted(std::vector<RadiationPattern>{
                         RadiationPattern("c", {{0.0, 6.02}})},
                     PatternSource::kSynthetic);
  PathVariables paths = sample_paths(env, 1, 3);
  Port port = port_at(0.6);
  double ph = std::norm(apply_pattern(paths, env, port, boosted, 0, 0));
  double pg = std::norm(theoretical_channel(paths, env, port, 0, 0));
  CHECK(ph / pg == doctest::Approx(std::pow(10.0, 0.602)).epsilon(1e-12));
  CHECK(ph / pg == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("single-path power ratio equals the pattern gain at the arrival angle") {
  // radiator-at-mid-travel style cut: 5.0 dBi at 45 deg
  PatternSet set(std::vector<RadiationPattern>{RadiationPattern(
                     "mid", {{0.0, 2.0}, {45.0, 5.0}, {90.0, 1.0}, {180.0, -8.0}})},
                 PatternSource::kMeasuredFile);
  ScatteringEnvironment env{10.0, 1.0, 0};
  PathVariables paths = sample_paths(env, 1, 11);
  paths.at(0, 0).los_aoa_deg = 45.0;
  Port port = port_at(0.2);
  double ratio = std::norm(apply_pattern(paths, env, port, set, 0, 0)) /
                 std::norm(theoretical_channel(paths, env, port, 0, 0));
  CHECK(ratio == doctest::Approx(std::pow(10.0, 0.5)).epsilon(1e-12));
}

TEST_CASE("realize fills the (M, M, N) tensor") {
  ScatteringEnvironment env{20.0, 1.0, 5};
  PortSet ports = linear_ports(20, kDefaultScfaW);
  PatternSet omni = make_omni_set(20);
  ChannelRealization real = realize(env, 2, ports, omni, 5);
  CHECK(real.m_users() == 2);
  CHECK(real.n_ports() == 20);

  PortSet single = linear_ports(1, 0.0);
  ChannelRealization tiny = realize(env, 1, single, omni1(), 5);
  PathVariables paths = sample_paths(env, 1, 5);
  complex<double> g = theoretical_channel(paths, env, single[0], 0, 0);
  CHECK(std::abs(tiny.h(0, 0, 0) - g) < 1e-12);
}

TEST_CASE("realize is deterministic in the seed") {
  ScatteringEnvironment env{20.0, 1.0, 5};
  PortSet ports = linear_ports(12, 0.9);
  PatternSet pats = make_synthetic_set(12, SyntheticProfile{});
  ChannelRealization a = realize(env, 2, ports, pats, 77);
  ChannelRealization b = realize(env, 2, ports, pats, 77);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 12; ++k) CHECK(a.h(j, i, k) == b.h(j, i, k));
}

TEST_CASE("realize agrees with per-port apply_pattern") {
  ScatteringEnvironment env{5.0, 1.0, 4};
  PortSet ports = linear_ports(12, 0.9);
  PatternSet pats = make_synthetic_set(12, SyntheticProfile{});
  ChannelRealization real = realize(env, 2, ports, pats, 1234);
  PathVariables paths = sample_paths(env, 2, 1234);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < ports.size(); ++k) {
        complex<double> expect = apply_pattern(paths, env, ports[k], pats, j, i);
        CHECK(std::abs(real.h(j, i, static_cast<int>(k)) - expect) < 1e-12);
      }
    }
  }
}

TEST_CASE("W = 0 collapses all ports onto the same channel") {
  ScatteringEnvironment env{20.0, 1.0, 5};
  PortSet ports = linear_ports(8, 0.0);
  PatternSet omni = make_omni_set(8);
  ChannelRealization real = realize(env, 2, ports, omni, 21);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i)
      for (int k = 1; k < 8; ++k)
        CHECK(std::abs(real.h(j, i, k) - real.h(j, i, 0)) < 1e-12);
}

TEST_CASE("a constant dB offset on every pattern scales |h|^2 exactly") {
  ScatteringEnvironment env{10.0, 1.0, 5};
  PortSet ports = linear_ports(6, 0.7);
  PatternSet base = make_synthetic_set(6, SyntheticProfile{});
  const double offset_db = 7.5;
  std::vector<RadiationPattern> shifted;
  for (const auto& pat : base) {
    std::vector<PatternSample> samples = pat.samples();
    for (auto& s : samples) s.gain_dbi += offset_db;
    shifted.emplace_back(pat.port_label(), std::move(samples));
  }
  PatternSet lifted(std::move(shifted), PatternSource::kSynthetic);
  ChannelRealization a = realize(env, 2, ports, base, 8);
  ChannelRealization b = realize(env, 2, ports, lifted, 8);
  const double factor = std::pow(10.0, offset_db / 10.0);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 6; ++k)
        CHECK(std::norm(b.h(j, i, k)) ==
              doctest::Approx(factor * std::norm(a.h(j, i, k))).epsilon(1e-12));
}

TEST_CASE("adding a user leaves existing links' paths untouched") {
  ScatteringEnvironment env{20.0, 1.0, 5};
  PathVariables two = sample_paths(env, 2, 31);
  PathVariables three = sample_paths(env, 3, 31);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      CHECK(two.at(j, i).los_phase_rad == three.at(j, i).los_phase_rad);
      CHECK(two.at(j, i).los_aoa_deg == three.at(j, i).los_aoa_deg);
      CHECK(two.at(j, i).scattered_coeff == three.at(j, i).scattered_coeff);
    }
  }
}
