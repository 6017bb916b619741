#include "semiaffine/rng.hpp"

#include <cmath>

namespace semiaffine {

std::uint64_t mix64(std::uint64_t x) {
  // SplitMix64 finalizer.
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed) ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL))) {}

CounterRng::result_type CounterRng::at(std::uint64_t counter) const {
  return mix64(key_ ^ mix64(counter));
}

double CounterRng::exponential(double rate) {
  return -std::log1p(-uniform()) / rate;
}

}  // namespace semiaffine
