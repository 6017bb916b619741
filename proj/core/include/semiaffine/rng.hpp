#pragma once

#include <cstdint>
#include <limits>

namespace semiaffine {

/// Counter-based generator: output i of stream s under seed k is a fixed hash
/// of (k, s, i). Streams never share state, so parallel consumers that own
/// distinct stream ids draw reproducible values regardless of scheduling.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return at(counter_++); }

  /// Value at an arbitrary counter position; does not advance.
  result_type at(std::uint64_t counter) const;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Exponential with the given rate, by inversion.
  double exponential(double rate);

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace semiaffine
