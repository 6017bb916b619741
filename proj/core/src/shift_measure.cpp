#include "semiaffine/shift_measure.hpp"

#include <cmath>
#include <string>

#include "semiaffine/error.hpp"
#include "semiaffine/rng.hpp"

namespace semiaffine {

ShiftMeasure ShiftMeasure::bernoulli(double p) {
  if (!(p > 0.0 && p < 1.0)) throw PreconditionError("Bernoulli parameter must satisfy 0 < p < 1");
  ShiftMeasure nu;
  nu.bernoulli_ = true;
  nu.initial_ = {p, 1.0 - p};
  nu.transition_ = {{{p, 1.0 - p}, {p, 1.0 - p}}};
  return nu;
}

ShiftMeasure ShiftMeasure::markov(const Matrix2& transition, std::optional<std::array<double, 2>> stationary) {
  for (const auto& row : transition) {
    if (!(row[0] >= 0.0 && row[1] >= 0.0)) throw PreconditionError("transition entries must be nonnegative");
    if (std::abs(row[0] + row[1] - 1.0) > 1e-12) throw PreconditionError("transition rows must sum to 1");
  }
  if (!(transition[0][1] > 0.0 && transition[1][0] > 0.0)) {
    throw PreconditionError("Markov chain must be irreducible (both off-diagonal entries positive)");
  }
  const double leave0 = transition[0][1];
  const double leave1 = transition[1][0];
  std::array<double, 2> pi{leave1 / (leave0 + leave1), leave0 / (leave0 + leave1)};
  if (stationary) {
    const auto& given = *stationary;
    const double balance0 = given[0] * transition[0][0] + given[1] * transition[1][0] - given[0];
    const double balance1 = given[0] * transition[0][1] + given[1] * transition[1][1] - given[1];
    if (std::abs(given[0] + given[1] - 1.0) > 1e-12 || std::abs(balance0) > 1e-12 ||
        std::abs(balance1) > 1e-12) {
      throw PreconditionError("supplied stationary vector is not stationary for the transition table");
    }
  }
  ShiftMeasure nu;
  nu.bernoulli_ = false;
  nu.initial_ = pi;
  nu.transition_ = transition;
  return nu;
}

double ShiftMeasure::bernoulli_p() const {
  if (!bernoulli_) throw PreconditionError("measure is not Bernoulli");
  return initial_[0];
}

double ShiftMeasure::cylinder_mass(const Word& word) const {
  if (word.empty()) return 1.0;
  double mass = initial_[word[0]];
  for (std::size_t i = 1; i < word.size(); ++i) mass *= transition_[word[i - 1]][word[i]];
  return mass;
}

Word ShiftMeasure::sample_path(std::size_t n, std::uint64_t seed, std::uint64_t stream) const {
  CounterRng rng(seed, stream);
  Word word;
  int previous = -1;
  for (std::size_t i = 0; i < n; ++i) {
    const double zero_prob = previous < 0 ? initial_[0] : transition_[previous][0];
    previous = rng.uniform() < zero_prob ? 0 : 1;
    word.push_back(previous);
  }
  return word;
}

double lyapunov(const ShiftMeasure& nu, const SystemParams& params) {
  return nu.prob0() * std::log(params.a) + (1.0 - nu.prob0()) * std::log(params.b);
}

}  // namespace semiaffine
