#pragma once

#include <cstdint>
#include <random>

namespace stirap {

/// Child seed for stream `index` of `parent`, via two rounds of the splitmix64
/// finalizer. Used for run-, point- and channel-level substreams.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index);

// Uniform variates on (0, 1] from a 64-bit Mersenne twister.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    // 53 random mantissa bits, shifted up one ulp so 0 is never produced.
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace stirap
