#pragma once

#include <cmath>
#include <cstdint>

namespace estcomb {

// SplitMix64 (Steele/Lea/Vigna). The generator is pinned here, rather than
// taken from <random>, because distribution code in the standard library is
// implementation-defined and would break seeded golden outputs.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform on [a, b]. Intervals narrower than 1e-15 collapse to a, so long
  // recursions cannot hand back degenerate endpoints in the wrong order.
  double uniform(double a, double b) noexcept {
    if (b - a < 1e-15) return a;
    const double v = a + uniform() * (b - a);
    return v < a ? a : (v > b ? b : v);
  }

  // Standard normal via Box-Muller; consumes exactly two outputs per call.
  double normal() noexcept {
    constexpr double two_pi = 6.283185307179586476925287;
    const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

 private:
  std::uint64_t state_;
};

// Seed for substream `index` of a master seed. A substream depends only on
// (master, index), so any parallel partition of the index range draws the
// same values as a sequential loop.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = master ^ ((index + 1) * 0xD1342543DE82EF95ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline SplitMix64 substream(std::uint64_t master, std::uint64_t index) noexcept {
  return SplitMix64(derive_stream_seed(master, index));
}

}  // namespace estcomb
