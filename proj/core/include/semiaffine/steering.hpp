#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "semiaffine/params.hpp"
#include "semiaffine/rng.hpp"
#include "semiaffine/word.hpp"

namespace semiaffine {

struct SteerResult {
  Word word;
  std::size_t leading_zeros = 0;
  double image = 0.0;  // T_w(x)
  double error = 0.0;  // |T_w(x) - y|
  double slope = 0.0;
  double orbit_min = 0.0;  // over the intermediate images, x included
  double orbit_max = 0.0;
};

/// A word with |T_w(x) - y| < epsilon: leading zeros bring x into [0, 1/a],
/// then a Holder certificate for an interval around y finishes. Requires
/// x >= 0, y > 0, epsilon > 0. The result is re-verified before returning.
SteerResult steer(double x, double y, double epsilon, const SystemParams& params);

struct ApproxElement {
  Word word;
  double target = 0.0;
  double image = 0.0;  // T_w(1)
  double error = 0.0;
  double slope = 0.0;
};

/// g_i with |T_{g_i}(1) - a_i| < 1/i and slope < 1/i for i = 1..N.
std::vector<ApproxElement> approx_sequence(std::span<const double> targets, const SystemParams& params,
                                           unsigned workers = 0);

/// Draws N targets with one stream per index and builds the sequence.
std::vector<ApproxElement> approx_sequence(const std::function<double(CounterRng&)>& sampler,
                                           std::size_t count, const SystemParams& params,
                                           std::uint64_t seed, unsigned workers = 0);

/// The k-th word (1-based) of the semigroup in shortlex order, empty word first.
Word enumerate_semigroup(std::uint64_t k);

/// The input sequence with the k-th semigroup word inserted at output position
/// k^2 (1-based). Every other position takes the next input element.
class InterleavedSequence {
 public:
  explicit InterleavedSequence(std::vector<Word> input);

  /// Output element at 1-based position; throws PreconditionError when the
  /// input is exhausted before that position.
  Word at(std::uint64_t position) const;

  /// Whether the element at `position` is an inserted semigroup word.
  static bool is_inserted(std::uint64_t position) noexcept;

  /// Largest output length the input supports.
  std::uint64_t available() const noexcept;

  std::vector<Word> take(std::uint64_t count) const;

 private:
  std::vector<Word> input_;
};

}  // namespace semiaffine
