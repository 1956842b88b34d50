#include "fama/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace fama {

namespace {

double wrap_angle(double angle_deg) {
  double a = std::fmod(angle_deg, 360.0);
  if (a < 0.0) a += 360.0;
  return a;
}

// Shortest angular distance on the circle, in [0, 180].
double ang_dist(double a_deg, double b_deg) {
  double d = std::fabs(wrap_angle(a_deg) - wrap_angle(b_deg));
  return d > 180.0 ? 360.0 - d : d;
}

}  // namespace

RadiationPattern::RadiationPattern(std::string port_label,
                                   std::vector<PatternSample> samples,
                                   double frequency_ghz)
    : port_label_(std::move(port_label)),
      samples_(std::move(samples)),
      frequency_ghz_(frequency_ghz) {
  if (samples_.empty()) {
    throw PatternError("pattern '" + port_label_ + "' has no samples");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    double a = samples_[i].angle_deg;
    if (a < 0.0 || a >= 360.0 || !std::isfinite(a)) {
      throw PatternError("pattern '" + port_label_ +
                         "': sample angle out of [0, 360): " + std::to_string(a));
    }
    if (i > 0 && a <= samples_[i - 1].angle_deg) {
      throw PatternError("pattern '" + port_label_ +
                         "': sample angles not strictly increasing at " +
                         std::to_string(a));
    }
  }
  if (samples_.size() == 1) {
    const_gain_ = std::pow(10.0, samples_[0].gain_dbi / 10.0);
    const_amplitude_ = std::pow(10.0, samples_[0].gain_dbi / 20.0);
  }
}

double RadiationPattern::gain_db_at(double angle_deg) const {
  if (samples_.size() == 1) return samples_[0].gain_dbi;
  double a = wrap_angle(angle_deg);

  // First sample with angle > a; its predecessor (cyclically) brackets a.
  auto it = std::upper_bound(
      samples_.begin(), samples_.end(), a,
      [](double v, const PatternSample& s) { return v < s.angle_deg; });

  const PatternSample* lo;
  const PatternSample* hi;
  double span, offset;
  if (it == samples_.begin() || it == samples_.end()) {
    // Wraparound segment between the last and first sample.
    lo = &samples_.back();
    hi = &samples_.front();
    span = 360.0 - lo->angle_deg + hi->angle_deg;
    offset = a >= lo->angle_deg ? a - lo->angle_deg
                                : a + 360.0 - lo->angle_deg;
  } else {
    hi = &*it;
    lo = &*(it - 1);
    if (a == lo->angle_deg) return lo->gain_dbi;
    span = hi->angle_deg - lo->angle_deg;
    offset = a - lo->angle_deg;
  }
  double t = offset / span;
  return lo->gain_dbi + t * (hi->gain_dbi - lo->gain_dbi);
}

double RadiationPattern::gain_at(double angle_deg) const {
  if (samples_.size() == 1) return const_gain_;
  return std::pow(10.0, gain_db_at(angle_deg) / 10.0);
}

double RadiationPattern::amplitude_at(double angle_deg) const {
  if (samples_.size() == 1) return const_amplitude_;
  return std::pow(10.0, gain_db_at(angle_deg) / 20.0);
}

PatternSet::PatternSet(std::vector<RadiationPattern> patterns,
                       PatternSource source)
    : patterns_(std::move(patterns)), source_(source) {
  if (patterns_.empty()) {
    throw PatternError("pattern set must contain at least one pattern");
  }
}

RadiationPattern make_omni() {
  return RadiationPattern("omni", {{0.0, 0.0}});
}

PatternSet make_omni_set(int n_ports) {
  if (n_ports < 1) throw PatternError("omni set needs at least one port");
  std::vector<RadiationPattern> pats(static_cast<std::size_t>(n_ports),
                                     make_omni());
  return PatternSet(std::move(pats), PatternSource::kOmni);
}

namespace {

void check_profile(const SyntheticProfile& p) {
  if (p.lobe_width_deg <= 0.0)
    throw PatternError("invalid profile: lobe_width_deg must be positive");
  if (p.null_width_deg <= 0.0)
    throw PatternError("invalid profile: null_width_deg must be positive");
  if (p.grid_step_deg <= 0.0 || p.grid_step_deg >= 360.0)
    throw PatternError("invalid profile: grid_step_deg must be in (0, 360)");
}

double base_lobe_db(const SyntheticProfile& p, double angle_deg) {
  double d = ang_dist(angle_deg, p.lobe_center_deg);
  double g = p.base_gain_dbi - 12.0 * (d / p.lobe_width_deg) * (d / p.lobe_width_deg);
  return std::max(g, p.floor_dbi);
}

// Raised-cosine notch of finite support: exactly `depth` at the center,
// exactly zero beyond the half-width.
double notch_db(const SyntheticProfile& p, double angle_deg, double center_deg) {
  double d = ang_dist(angle_deg, center_deg);
  if (d >= p.null_width_deg) return 0.0;
  double c = std::cos(M_PI * d / (2.0 * p.null_width_deg));
  return p.null_depth_db * c * c;
}

std::vector<double> synth_grid(const SyntheticProfile& p) {
  std::vector<double> grid;
  for (double a = 0.0; a < 360.0 - 1e-9; a += p.grid_step_deg) grid.push_back(a);
  return grid;
}

RadiationPattern synth_pattern(const SyntheticProfile& p,
                               const std::vector<double>& grid,
                               std::string label,
                               std::initializer_list<double> null_centers) {
  std::vector<PatternSample> samples;
  samples.reserve(grid.size());
  for (double a : grid) {
    double g = base_lobe_db(p, a);
    for (double c : null_centers) g -= notch_db(p, a, c);
    samples.push_back({a, g});
  }
  return RadiationPattern(std::move(label), std::move(samples));
}

}  // namespace

PatternSet make_synthetic_set(int n_ports, const SyntheticProfile& profile) {
  if (n_ports < 1) throw PatternError("synthetic set needs at least one port");
  check_profile(profile);
  auto grid = synth_grid(profile);
  std::vector<RadiationPattern> pats;
  pats.reserve(static_cast<std::size_t>(n_ports));
  for (int p = 0; p < n_ports; ++p) {
    double center = profile.null_start_deg + p * profile.null_drift_deg;
    pats.push_back(synth_pattern(profile, grid, std::to_string(p), {center}));
  }
  return PatternSet(std::move(pats), PatternSource::kSynthetic);
}

PatternSet make_synthetic_grid_set(int n1, int n2,
                                   const SyntheticProfile& profile,
                                   double second_null_offset_deg) {
  if (n1 < 1 || n2 < 1)
    throw PatternError("synthetic grid set needs n1, n2 >= 1");
  check_profile(profile);
  auto grid = synth_grid(profile);
  std::vector<RadiationPattern> pats;
  pats.reserve(static_cast<std::size_t>(n1) * n2);
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      double c1 = profile.null_start_deg + i1 * profile.null_drift_deg;
      double c2 = profile.null_start_deg + second_null_offset_deg +
                  i2 * profile.null_drift_deg;
      pats.push_back(synth_pattern(profile, grid,
                                   std::to_string(i1 * n2 + i2), {c1, c2}));
    }
  }
  return PatternSet(std::move(pats), PatternSource::kSynthetic);
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw PatternError("pattern CSV line " + std::to_string(line_no) + ": " + what);
}

double parse_real(const std::string& field, std::size_t line_no,
                  const char* name) {
  try {
    std::size_t pos = 0;
    double v = std::stod(field, &pos);
    if (pos != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    parse_fail(line_no, std::string("malformed ") + name + " '" + field + "'");
  }
}

}  // namespace

PatternSet load_pattern_set(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  double frequency_ghz = 0.0;
  bool header_seen = false;

  struct PortData {
    std::vector<PatternSample> samples;
  };
  std::map<long, PortData> by_port;
  std::vector<long> port_order;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("frequency_ghz=");
      if (pos != std::string::npos) {
        frequency_ghz = parse_real(line.substr(pos + 14), line_no,
                                   "frequency_ghz");
      }
      continue;
    }
    if (!header_seen) {
      if (line != "port_id,angle_deg,gain_dbi") {
        parse_fail(line_no, "expected header 'port_id,angle_deg,gain_dbi'");
      }
      header_seen = true;
      continue;
    }

    std::stringstream row(line);
    std::string f_port, f_angle, f_gain, extra;
    if (!std::getline(row, f_port, ',') || !std::getline(row, f_angle, ',') ||
        !std::getline(row, f_gain, ',')) {
      parse_fail(line_no, "expected 3 comma-separated fields");
    }
    if (std::getline(row, extra, ',')) parse_fail(line_no, "too many fields");

    long port_id = 0;
    try {
      std::size_t pos = 0;
      port_id = std::stol(f_port, &pos);
      if (pos != f_port.size() || port_id < 0) throw std::invalid_argument(f_port);
    } catch (const std::exception&) {
      parse_fail(line_no, "malformed port_id '" + f_port + "'");
    }
    double angle = parse_real(f_angle, line_no, "angle_deg");
    double gain = parse_real(f_gain, line_no, "gain_dbi");
    if (angle < 0.0 || angle >= 360.0) {
      parse_fail(line_no, "angle_deg out of [0, 360)");
    }

    auto [it, inserted] = by_port.try_emplace(port_id);
    if (inserted) port_order.push_back(port_id);
    for (const auto& s : it->second.samples) {
      if (s.angle_deg == angle) {
        parse_fail(line_no, "duplicate (port " + std::to_string(port_id) +
                                ", angle " + f_angle + ")");
      }
    }
    it->second.samples.push_back({angle, gain});
  }

  if (!header_seen) throw PatternError("pattern CSV: empty file");
  if (by_port.empty()) throw PatternError("pattern CSV: no data rows");

  std::vector<RadiationPattern> pats;
  pats.reserve(port_order.size());
  for (long id : port_order) {
    auto samples = by_port[id].samples;
    std::sort(samples.begin(), samples.end(),
              [](const PatternSample& a, const PatternSample& b) {
                return a.angle_deg < b.angle_deg;
              });
    pats.emplace_back(std::to_string(id), std::move(samples), frequency_ghz);
  }

  // All ports in one file must share the angular grid.
  const auto& ref = pats.front().samples();
  for (const auto& p : pats) {
    const auto& s = p.samples();
    bool same = s.size() == ref.size();
    for (std::size_t i = 0; same && i < s.size(); ++i) {
      same = s[i].angle_deg == ref[i].angle_deg;
    }
    if (!same) {
      throw PatternError("pattern CSV: port " + p.port_label() +
                         " does not share the angular grid of port " +
                         pats.front().port_label());
    }
  }
  return PatternSet(std::move(pats), PatternSource::kMeasuredFile);
}

PatternSet load_pattern_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PatternError("cannot open pattern file '" + path + "'");
  return load_pattern_set(in);
}

void save_pattern_set(const PatternSet& set, std::ostream& out) {
  double freq = set[0].frequency_ghz();
  if (freq != 0.0) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "# frequency_ghz=%g\n", freq);
    out << buf;
  }
  out << "port_id,angle_deg,gain_dbi\n";
  for (std::size_t p = 0; p < set.size(); ++p) {
    for (const auto& s : set[p].samples()) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%s,%.3f,%.4f\n",
                    set[p].port_label().c_str(), s.angle_deg, s.gain_dbi);
      out << buf;
    }
  }
}

void save_pattern_set_file(const PatternSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw PatternError("cannot write pattern file '" + path + "'");
  save_pattern_set(set, out);
}

RpdrEnvelope rpdr(const PatternSet& set, std::span<const double> grid_deg) {
  if (grid_deg.empty()) throw PatternError("rpdr: empty angle grid");
  RpdrEnvelope env;
  env.angles_deg.assign(grid_deg.begin(), grid_deg.end());
  env.upper_dbi.reserve(grid_deg.size());
  env.lower_dbi.reserve(grid_deg.size());
  env.range_db.reserve(grid_deg.size());
  double sum = 0.0;
  for (double a : grid_deg) {
    double hi = set[0].gain_db_at(a);
    double lo = hi;
    for (std::size_t p = 1; p < set.size(); ++p) {
      double g = set[p].gain_db_at(a);
      hi = std::max(hi, g);
      lo = std::min(lo, g);
    }
    env.upper_dbi.push_back(hi);
    env.lower_dbi.push_back(lo);
    env.range_db.push_back(hi - lo);
    sum += hi - lo;
  }
  env.avg_range_db = sum / static_cast<double>(grid_deg.size());
  return env;
}

}  // namespace fama
