#pragma once

#include <cmath>
#include <cstdint>

namespace fedcarbon {

// Counter-based generator: the stream is a pure function of the key
// (seed, a, b), so per-device and per-round draws are reproducible no
// matter how many worker threads interleave or in which order callers
// ask for them. State transition and finalizer follow splitmix64.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
    state_ = mix(seed);
    state_ = mix(state_ ^ (a + kGolden));
    state_ = mix(state_ ^ (b + kGolden));
  }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound), bound >= 1. Unbiased (rejection).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x = next_u64();
    while (x < threshold) x = next_u64();
    return x % bound;
  }

  // Standard normal via Box-Muller; burns two uniforms per draw.
  double next_gaussian() {
    const double u = 1.0 - next_unit();  // (0, 1], keeps log() finite
    const double v = next_unit();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::uint64_t state_;
};

// Stable sub-seed for an independent stream of one experiment seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return CounterRng::mix(CounterRng::mix(base) ^ (stream + 0x9e3779b97f4a7c15ULL));
}

}  // namespace fedcarbon
