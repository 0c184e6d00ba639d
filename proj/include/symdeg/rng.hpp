// Counter-based random streams: each (seed, stream) pair yields an
// independent deterministic generator, so sample i of a Monte Carlo run can
// be drawn as CounterRng(seed, i) regardless of evaluation order or thread
// count.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace symdeg {

class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) {
    state_ = seed;
    (void)splitmix(state_);
    state_ ^= (stream + 0x632be59bd9b4e019ull) * 0xd1b54a32d192ed03ull;
    (void)splitmix(state_);
  }

  std::uint64_t next_u64() { return splitmix(state_); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log() argument.
  double uniform_open() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  // Standard normal via Box-Muller; generates pairs, caches the second.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_open()));
    const double t = 2.0 * std::numbers::pi * uniform();
    cached_ = r * std::sin(t);
    has_cached_ = true;
    return r * std::cos(t);
  }

 private:
  static std::uint64_t splitmix(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
  double cached_ = 0;
  bool has_cached_ = false;
};

// Order-independent key derivation for nested sample streams (e.g. one
// sub-stream per surface cell).
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  CounterRng r(seed, index);
  return r.next_u64();
}

}  // namespace symdeg
