#pragma once

#include <cstdint>
#include <limits>

namespace fama::rng {

// Finalizer stage of splitmix64; bijective on 64-bit words.
constexpr std::uint64_t hash64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Stable counter-based seed derivation: child stream `label` of `seed`.
// Execution-order independent, so trial t gets the same stream no matter
// which worker runs it.
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t label) {
  return hash64(seed + 0x9e3779b97f4a7c15ULL * (label + 1));
}

// splitmix64 generator. Cheap to construct, which matters here: the
// simulator seeds a fresh stream per (trial, BS antenna, user) tuple.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

}  // namespace fama::rng
