#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "semiaffine/params.hpp"
#include "semiaffine/word.hpp"

namespace semiaffine {

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// A shift-invariant ergodic measure on one-sided 0-1 sequences: Bernoulli or a
/// stationary irreducible two-state Markov chain. Bernoulli(p) is represented
/// internally as the chain whose rows are both (p, 1-p).
class ShiftMeasure {
 public:
  /// p = probability of symbol 0, 0 < p < 1.
  static ShiftMeasure bernoulli(double p);

  /// Row-stochastic transitions with both off-diagonal entries positive. The
  /// stationary vector is solved in closed form; a supplied one is validated.
  static ShiftMeasure markov(const Matrix2& transition,
                             std::optional<std::array<double, 2>> stationary = std::nullopt);

  bool is_bernoulli() const noexcept { return bernoulli_; }

  /// Symbol-0 probability of a Bernoulli measure; throws for Markov.
  double bernoulli_p() const;

  /// nu(C_0).
  double prob0() const noexcept { return initial_[0]; }

  double initial(int symbol) const noexcept { return initial_[symbol]; }
  double transition(int from, int to) const noexcept { return transition_[from][to]; }
  const Matrix2& transition_matrix() const noexcept { return transition_; }

  double cylinder_mass(const Word& word) const;

  /// A length-n word drawn from the measure; deterministic in (seed, stream).
  Word sample_path(std::size_t n, std::uint64_t seed, std::uint64_t stream = 0) const;

 private:
  ShiftMeasure() = default;

  bool bernoulli_ = true;
  std::array<double, 2> initial_{0.5, 0.5};
  Matrix2 transition_{{{0.5, 0.5}, {0.5, 0.5}}};
};

/// nu(C_0) ln a + nu(C_1) ln b.
double lyapunov(const ShiftMeasure& nu, const SystemParams& params);

}  // namespace semiaffine
