#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace dyson {

// SplitMix64 finalizer; bijective mix of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-keyed SplitMix64 stream.  The state is a pure function of
// (master_seed, stream, counter), so sample j of stream k is identical no
// matter which thread draws it or in what order.  No std:: distributions:
// their output is implementation-defined and would break reproducibility.
class CounterRng {
 public:
  CounterRng(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t counter) {
    state_ = mix64(master_seed + 0x9E3779B97F4A7C15ULL);
    state_ = mix64(state_ ^ (stream + 0xD1B54A32D192ED03ULL));
    state_ = mix64(state_ ^ (counter + 0x8CB92BA72F3D8DD7ULL));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0, 1]; safe as a log() argument.
  double next_unit_open_low() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal, Box-Muller; the pair partner is cached.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit_open_low();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // -1 or +1 with equal probability.
  double next_sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace dyson
