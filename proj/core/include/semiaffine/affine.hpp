#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <vector>

#include "semiaffine/params.hpp"
#include "semiaffine/word.hpp"

namespace semiaffine {

/// x -> slope * x + intercept.
template <class Scalar>
struct BasicAffineMap {
  Scalar slope{1};
  Scalar intercept{0};

  Scalar operator()(const Scalar& x) const { return slope * x + intercept; }

  /// The map `*this` applied after `inner`.
  BasicAffineMap after(const BasicAffineMap& inner) const {
    return {slope * inner.slope, slope * inner.intercept + intercept};
  }

  friend bool operator==(const BasicAffineMap& lhs, const BasicAffineMap& rhs) {
    return lhs.slope == rhs.slope && lhs.intercept == rhs.intercept;
  }
};

using AffineMap = BasicAffineMap<double>;
using ExactAffineMap = BasicAffineMap<mpq_class>;

/// The composite T_w with w[0] applied first.
AffineMap compose(const Word& word, const SystemParams& params);

/// Exact version of compose; throws PreconditionError without exact params.
ExactAffineMap compose_exact(const Word& word, const SystemParams& params);

inline double apply(const AffineMap& map, double x) { return map(x); }

/// a^(#0) * b^(#1), accumulated in word order.
double word_derivative(const Word& word, const SystemParams& params);

/// Both sides of the bound 1/(a^(n-m) b^m) >= (m-1) x / (b M^2) for words whose
/// orbit from x stays below M.
struct Mr33Report {
  bool precondition_holds = true;
  /// First k whose image T_{w_k} o ... o T_{w_0}(x) exceeds M (when x <= M).
  std::optional<std::size_t> violating_prefix;
  bool start_exceeds_bound = false;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

Mr33Report mr33_check(const Word& word, double x, double bound, const SystemParams& params);

struct CoincidenceClass {
  ExactAffineMap map;
  std::vector<Word> words;  // shortlex order
};

/// All classes of two or more distinct words of length 1..max_len that compose
/// to the same affine map, compared in exact rational arithmetic. Classes are
/// ordered by their first word.
std::vector<CoincidenceClass> coincidence_search(std::size_t max_len, const SystemParams& params,
                                                 unsigned workers = 0);

}  // namespace semiaffine
