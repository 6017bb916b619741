#include "semiaffine/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "semiaffine/error.hpp"
#include "semiaffine/parallel.hpp"
#include "semiaffine/shift_measure.hpp"

namespace semiaffine {

GridMeasure tp_pushforward(const GridMeasure& mu, double p, const SystemParams& params, unsigned workers) {
  if (!(p > 0.0 && p < 1.0)) throw PreconditionError("p must satisfy 0 < p < 1");
  const std::size_t n = mu.nodes();
  std::vector<double> next(n);
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  const double inv_a = 1.0 / params.a;
  parallel_for(chunks, workers, [&](std::size_t chunk) {
    const std::size_t end = std::min(n - 1, (chunk + 1) * kChunk);
    for (std::size_t j = chunk * kChunk; j < end; ++j) {
      const double x = mu.x_at(j);
      next[j] = p * mu.cdf(x * inv_a) + (1.0 - p) * mu.cdf((x - 1.0) / params.b);
    }
  });
  // Both generators fix infinity, so the mass there is unchanged.
  next[n - 1] = mu.cdf_values().back();
  return GridMeasure(std::move(next));
}

StationarySolution solve_stationary(double p, const SystemParams& params, const StationaryOptions& options) {
  const double exponent = lyapunov(ShiftMeasure::bernoulli(p), params);
  if (!(exponent < 0.0)) {
    std::ostringstream msg;
    msg << "no stationary probability measure: Lyapunov exponent " << exponent << " is not negative";
    throw LyapunovSignError(msg.str(), exponent);
  }
  StationarySolution solution;
  solution.measure = GridMeasure::dirac(options.start, options.grid);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 0; iter <= options.max_iters; ++iter) {
    GridMeasure next = tp_pushforward(solution.measure, p, params, options.workers);
    residual = kolmogorov_distance(solution.measure, next);
    solution.iterations = iter;
    solution.residual = residual;
    if (residual <= options.tol) return solution;
    solution.measure = std::move(next);
  }
  std::ostringstream msg;
  msg << "stationary iteration did not reach tol " << options.tol << " in " << options.max_iters
      << " iterations (residual " << residual << ")";
  throw ConvergenceError(msg.str(), residual);
}

double moment_oracle(double p, const SystemParams& params, int order) {
  if (order != 1 && order != 2) throw PreconditionError("moment oracle supports orders 1 and 2");
  const double a = params.a;
  const double b = params.b;
  const double den1 = 1.0 - p * a - (1.0 - p) * b;
  if (!(den1 > 0.0)) throw PreconditionError("first moment is infinite: p a + (1-p) b >= 1");
  const double mean = (1.0 - p) / den1;
  if (order == 1) return mean;
  const double den2 = 1.0 - p * a * a - (1.0 - p) * b * b;
  if (!(den2 > 0.0)) throw PreconditionError("second moment is infinite: p a^2 + (1-p) b^2 >= 1");
  return (1.0 - p) * (2.0 * b * mean + 1.0) / den2;
}

double quantile_map(const GridMeasure& mu, double s) {
  if (!(s >= 0.0 && s < 1.0)) throw PreconditionError("quantile argument must lie in [0, 1)");
  auto cdf = mu.cdf_values();
  if (s <= cdf[0]) return 0.0;
  auto it = std::lower_bound(cdf.begin(), cdf.end(), s);
  if (it == cdf.end()) return std::numeric_limits<double>::infinity();
  const auto j = static_cast<std::size_t>(it - cdf.begin());
  const double rise = cdf[j] - cdf[j - 1];
  const double frac = rise > 0.0 ? (s - cdf[j - 1]) / rise : 1.0;
  const double u = mu.u_at(j - 1) - frac * mu.cell_width();
  return u <= 0.0 ? std::numeric_limits<double>::infinity() : from_compact(u);
}

}  // namespace semiaffine
