#pragma once

#include <complex>
#include <vector>

#include "fama/errors.hpp"

namespace fama {

// Free-space wavelength at 26 GHz, in mm.
inline constexpr double kLambda26GhzMm = 299.792458 / 26.0;

// Default normalized antenna lengths: physical radiator travel span over
// the 26 GHz wavelength (9.5 mm single-channel, 11 mm double-channel).
inline constexpr double kDefaultScfaW = 9.5 / kLambda26GhzMm;
inline constexpr double kDefaultDcfaW = 11.0 / kLambda26GhzMm;

enum class AntennaKind { kScfa, kDcfa, kOmni, kCustom };

// How a two-channel radiator combination maps to a spatial position:
// index-linear spreads the flattened index evenly over [0, W];
// first-channel uses the first channel's radiator position only.
enum class DcfaMapping { kIndexLinear, kFirstChannel };

struct Port {
  int index;             // 1-based
  double position_norm;  // wavelengths, in [0, W]
  int pattern_index;     // into the associated PatternSet
};

// Ordered preset radiator locations along a linear dimension of length
// W wavelengths. Immutable after construction.
class PortSet {
 public:
  PortSet(std::vector<Port> ports, double w_normalized, AntennaKind kind);

  std::size_t size() const { return ports_.size(); }
  const Port& operator[](std::size_t i) const { return ports_[i]; }
  const std::vector<Port>& ports() const { return ports_; }
  double w() const { return w_; }
  AntennaKind kind() const { return kind_; }

  // True when positions form an arithmetic progression; enables the
  // incremental phase recursion in the channel hot loop.
  bool equally_spaced() const { return equally_spaced_; }

  auto begin() const { return ports_.begin(); }
  auto end() const { return ports_.end(); }

 private:
  std::vector<Port> ports_;
  double w_;
  AntennaKind kind_;
  bool equally_spaced_;
};

// n evenly separated ports over [0, w]; a single port sits at 0.
PortSet linear_ports(int n, double w, AntennaKind kind = AntennaKind::kCustom);

// n1 x n2 radiator combinations flattened in lexicographic order
// (first-channel position major).
PortSet dcfa_grid(int n1, int n2, double w,
                  DcfaMapping mapping = DcfaMapping::kIndexLinear);

// Array response of a port toward an arrival angle:
// e^{-j 2*pi * position_norm * cos(aoa)}.
std::complex<double> spatial_phase(double position_norm, double aoa_deg);
std::complex<double> spatial_phase(const Port& port, double aoa_deg);

}  // namespace fama
