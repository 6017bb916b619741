#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "semiaffine/measures.hpp"
#include "semiaffine/params.hpp"
#include "semiaffine/shift_measure.hpp"
#include "semiaffine/word.hpp"

namespace semiaffine {

/// Values above this are promoted to +inf, which both generators fix.
inline constexpr double kOverflowThreshold = 1e300;

/// T_s(x) in the extended half-line.
double step(int symbol, double x, const SystemParams& params) noexcept;

struct PathOrbit {
  std::vector<double> points;  // x_0 .. x_n
  std::optional<std::size_t> overflow_step;  // first k with x_k promoted to inf
};

/// x_{k+1} = T_{w_k}(x_k).
PathOrbit path_orbit(const Word& word, double x0, const SystemParams& params);

/// Empirical measure of x_0 .. x_{n-1} along a path sampled from nu.
PointMassMeasure path_average(const ShiftMeasure& nu, double x0, std::size_t n, std::uint64_t seed,
                              const SystemParams& params);

/// Same orbit as path_average, returned as raw points.
std::vector<double> path_points(const ShiftMeasure& nu, double x0, std::size_t n, std::uint64_t seed,
                                const SystemParams& params);

/// |1/(1+x) - 1/(1+y)| with 1/(1+inf) = 0.
double compact_metric(double x, double y) noexcept;

struct ContractionRow {
  double log_distance;      // |ln x_k - ln y_k|
  double compact_distance;  // d(x_k, y_k)
};

struct ContractionReport {
  std::vector<ContractionRow> rows;  // k = 0..n
  bool log_nonincreasing = true;     // checked at every step, no tolerance
  bool quarter_bound = true;         // d <= |ln x - ln y| / 4 at every step, up to rounding
  std::optional<std::size_t> first_increase;
};

/// Runs both orbits along the word; requires x, y > 0. With exact parameters
/// the orbits are rational and the monotonicity check has no rounding at all;
/// otherwise rounding near coalescence can register as a spurious increase.
ContractionReport contraction_diagnostics(double x, double y, const Word& word,
                                          const SystemParams& params);

}  // namespace semiaffine
