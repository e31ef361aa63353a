#pragma once

#include <cstdint>
#include <random>

namespace evfusion {

/// Seeded uniform variate stream.
///
/// Wraps std::mt19937_64, whose output sequence is fully specified by
/// the standard, and converts raw draws to doubles without going
/// through std::uniform_real_distribution (which is not portable
/// across standard library implementations). Given the same seed the
/// stream is identical on every platform.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// One uniform variate in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace evfusion
