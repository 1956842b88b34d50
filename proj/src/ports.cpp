#include "fama/ports.hpp"

#include <cmath>

namespace fama {

PortSet::PortSet(std::vector<Port> ports, double w_normalized, AntennaKind kind)
    : ports_(std::move(ports)), w_(w_normalized), kind_(kind) {
  if (ports_.empty()) throw ConfigError("port set must contain at least one port");
  if (w_ < 0.0) throw ConfigError("normalized antenna length W must be >= 0");
  for (const auto& p : ports_) {
    if (p.position_norm < 0.0 || p.position_norm > w_ + 1e-12) {
      throw ConfigError("port position outside [0, W]");
    }
  }
  equally_spaced_ = true;
  if (ports_.size() > 2) {
    double step = ports_[1].position_norm - ports_[0].position_norm;
    for (std::size_t k = 2; k < ports_.size(); ++k) {
      double d = ports_[k].position_norm - ports_[k - 1].position_norm;
      if (std::fabs(d - step) > 1e-12) {
        equally_spaced_ = false;
        break;
      }
    }
  }
}

PortSet linear_ports(int n, double w, AntennaKind kind) {
  if (n < 1) throw ConfigError("linear_ports: n must be >= 1");
  std::vector<Port> ports;
  ports.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    double pos = n >= 2 ? (k - 1) * w / (n - 1) : 0.0;
    ports.push_back({k, pos, k - 1});
  }
  return PortSet(std::move(ports), w, kind);
}

PortSet dcfa_grid(int n1, int n2, double w, DcfaMapping mapping) {
  if (n1 < 1 || n2 < 1) throw ConfigError("dcfa_grid: n1, n2 must be >= 1");
  const int n = n1 * n2;
  std::vector<Port> ports;
  ports.reserve(static_cast<std::size_t>(n));
  for (int i1 = 1; i1 <= n1; ++i1) {
    for (int i2 = 1; i2 <= n2; ++i2) {
      int k = (i1 - 1) * n2 + i2;
      double pos;
      if (mapping == DcfaMapping::kIndexLinear) {
        pos = n >= 2 ? (k - 1) * w / (n - 1) : 0.0;
      } else {
        pos = n1 >= 2 ? (i1 - 1) * w / (n1 - 1) : 0.0;
      }
      ports.push_back({k, pos, k - 1});
    }
  }
  return PortSet(std::move(ports), w, AntennaKind::kDcfa);
}

std::complex<double> spatial_phase(double position_norm, double aoa_deg) {
  double phase = -2.0 * M_PI * position_norm * std::cos(aoa_deg * M_PI / 180.0);
  return std::polar(1.0, phase);
}

std::complex<double> spatial_phase(const Port& port, double aoa_deg) {
  return spatial_phase(port.position_norm, aoa_deg);
}

}  // namespace fama
