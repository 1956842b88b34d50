#pragma once

#include <stdexcept>
#include <string>

namespace fama {

// Malformed or inconsistent pattern data (bad CSV, invalid sample grid,
// invalid synthesis profile).
class PatternError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid channel/scattering configuration, e.g. a zero-power environment.
class ChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid simulation or CLI configuration; message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fama
