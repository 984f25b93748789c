#pragma once

#include <cstdint>

namespace isl {

// SplitMix64 (Steele, Lea, Flood 2014): a 64-bit splittable generator whose
// output function is a strong avalanche mix of a Weyl-sequence counter.
// Substreams are derived by hashing (seed, domain, index), so row-parallel
// simulation keeps every row's stream independent of chunking.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Independent stream for (seed, domain tag, row index).
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t domain, std::uint64_t index) {
    std::uint64_t s = mix(seed + 0x9E3779B97F4A7C15ull * (domain + 1));
    s = mix(s + 0x9E3779B97F4A7C15ull * (index + 1));
    return SplitMix64(s);
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    ++draws_;
    return mix(state_);
  }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1]; safe as a log() argument.
  double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  // Standard normal via the trigonometric Box-Muller transform. Pairs are
  // drawn together and the spare is cached, so consumption is deterministic.
  double normal();

  // Gamma(shape) via Marsaglia-Tsang, with the u^(1/a) boost below shape 1.
  double gamma(double shape);

  // Beta(a, b) as X/(X+Y) with independent Gamma(a), Gamma(b) draws.
  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

  // Number of raw 64-bit outputs consumed so far.
  std::uint64_t draw_count() const { return draws_; }

 private:
  std::uint64_t state_;
  std::uint64_t draws_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace isl
