#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fama/errors.hpp"

namespace fama {

struct PatternSample {
  double angle_deg;  // in [0, 360)
  double gain_dbi;
};

// Power gain of one antenna port sampled over a great-circle cut.
// Queries interpolate linearly in dB with angular wraparound between the
// last and first sample; a single-sample pattern is constant.
class RadiationPattern {
 public:
  RadiationPattern(std::string port_label, std::vector<PatternSample> samples,
                   double frequency_ghz = 0.0);

  const std::string& port_label() const { return port_label_; }
  const std::vector<PatternSample>& samples() const { return samples_; }
  double frequency_ghz() const { return frequency_ghz_; }
  bool is_constant() const { return samples_.size() == 1; }

  // Interpolated gain in dBi; exact at sample angles.
  double gain_db_at(double angle_deg) const;
  // Linear power gain, 10^(dB/10).
  double gain_at(double angle_deg) const;
  // Field amplitude weight, 10^(dB/20) = sqrt(linear gain).
  double amplitude_at(double angle_deg) const;

 private:
  std::string port_label_;
  std::vector<PatternSample> samples_;
  double frequency_ghz_;
  // Precomputed for single-sample (constant) patterns; these sit on the
  // Monte Carlo hot path for the omni baseline.
  double const_gain_ = 1.0;
  double const_amplitude_ = 1.0;
};

enum class PatternSource { kMeasuredFile, kSynthetic, kOmni };

// Ordered per-port patterns. Patterns loaded from one file must share the
// same angular grid; the loader enforces this.
class PatternSet {
 public:
  PatternSet(std::vector<RadiationPattern> patterns, PatternSource source);

  std::size_t size() const { return patterns_.size(); }
  const RadiationPattern& operator[](std::size_t i) const { return patterns_[i]; }
  const std::vector<RadiationPattern>& patterns() const { return patterns_; }
  PatternSource source() const { return source_; }

  auto begin() const { return patterns_.begin(); }
  auto end() const { return patterns_.end(); }

 private:
  std::vector<RadiationPattern> patterns_;
  PatternSource source_;
};

// Per-angle gain envelope across all ports of a set.
struct RpdrEnvelope {
  std::vector<double> angles_deg;
  std::vector<double> upper_dbi;
  std::vector<double> lower_dbi;
  std::vector<double> range_db;  // upper - lower, >= 0
  double avg_range_db = 0.0;     // unweighted mean of range_db
};

// Shape parameters for synthesized pattern sets: a broadside lobe with a
// finite-width notch whose center drifts with the port index, mimicking a
// radiator that scatters most strongly toward its own position.
struct SyntheticProfile {
  double base_gain_dbi = 5.0;
  double lobe_center_deg = 0.0;
  double lobe_width_deg = 60.0;  // quadratic rolloff scale
  double floor_dbi = -10.0;
  double null_depth_db = 12.0;
  double null_width_deg = 25.0;  // notch half-width; zero outside
  double null_start_deg = 300.0;
  double null_drift_deg = 6.0;  // notch center shift per port
  double grid_step_deg = 5.0;
};

// Constant 0 dBi pattern.
RadiationPattern make_omni();

// Pattern set of n copies of the omni pattern (one per port).
PatternSet make_omni_set(int n_ports);

// Deterministic synthetic set: port p's notch sits at
// null_start + p * null_drift.
PatternSet make_synthetic_set(int n_ports, const SyntheticProfile& profile);

// Two-channel variant: n1*n2 patterns in lexicographic order, each with two
// independently drifting notches. The second notch starts at
// null_start + second_null_offset and drifts with the second index.
PatternSet make_synthetic_grid_set(int n1, int n2,
                                   const SyntheticProfile& profile,
                                   double second_null_offset_deg = 90.0);

// Pattern CSV: header `port_id,angle_deg,gain_dbi`, optional leading
// `# frequency_ghz=<x>` comment. Ports ordered by first appearance,
// angles sorted and validated per port, shared grid enforced.
PatternSet load_pattern_set(std::istream& in);
PatternSet load_pattern_set_file(const std::string& path);

// Canonical serialization: angles at 3 decimals, gains at 4. Re-serializing
// a loaded file reproduces it byte for byte.
void save_pattern_set(const PatternSet& set, std::ostream& out);
void save_pattern_set_file(const PatternSet& set, const std::string& path);

// Upper/lower gain envelope of a set over an angle grid.
RpdrEnvelope rpdr(const PatternSet& set, std::span<const double> grid_deg);

}  // namespace fama
