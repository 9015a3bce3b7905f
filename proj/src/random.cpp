#include "stirap/random.hpp"

namespace stirap {

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  const auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(parent) ^ (index * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL));
}

}  // namespace stirap
