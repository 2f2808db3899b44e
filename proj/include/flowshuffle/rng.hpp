#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace flowshuffle {

// Deterministic random source for simulations.
//
// The engine is std::mt19937_64, whose output sequence is pinned by the
// standard, and every distribution here is derived from raw engine words by
// hand. std::normal_distribution and std::uniform_int_distribution are
// deliberately avoided: their algorithms are implementation-defined, and a
// run must produce identical results on every toolchain for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). Rejection sampling keeps the draw unbiased
  // for every n, not just powers of two.
  std::uint32_t uniform_index(std::uint32_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return static_cast<std::uint32_t>(v % n);
  }

  // Gaussian via Box-Muller. Consumes exactly two engine words per call and
  // never caches the second variate, so call counts stay predictable.
  double normal(double mean, double stddev) {
    // u1 in (0, 1] keeps the log argument away from zero.
    const double u1 =
        (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * radius * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// Stateless seed mixer (splitmix64 finalizer). Distinct (base, index) pairs
// map to well-separated streams, so parallel iterations can each own an Rng
// without coordinating.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t x = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace flowshuffle
