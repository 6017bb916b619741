#pragma once

#include <cstddef>

#include "semiaffine/measures.hpp"
#include "semiaffine/params.hpp"

namespace semiaffine {

/// mu -> p (T0)_* mu + (1-p) (T1)_* mu on distribution functions:
/// F'(x) = p F(x/a) + (1-p) F((x-1)/b), with F = 0 on negative arguments.
GridMeasure tp_pushforward(const GridMeasure& mu, double p, const SystemParams& params,
                           unsigned workers = 0);

struct StationaryOptions {
  std::size_t grid = std::size_t{1} << 16;
  double tol = 1e-6;
  std::size_t max_iters = 10000;
  double start = 1.0;  // iteration starts from the point mass here
  unsigned workers = 0;
};

struct StationarySolution {
  GridMeasure measure;
  double residual = 0.0;  // Kolmogorov distance between mu and its image
  std::size_t iterations = 0;
};

/// Fixed point of the Bernoulli(p) transfer operator. Throws LyapunovSignError
/// when p ln a + (1-p) ln b >= 0 and ConvergenceError past max_iters.
StationarySolution solve_stationary(double p, const SystemParams& params,
                                    const StationaryOptions& options = {});

/// Closed-form first (order 1) or second (order 2) moment of the stationary
/// measure; throws PreconditionError when that moment is infinite.
double moment_oracle(double p, const SystemParams& params, int order);

/// H(s) = inf{x : mu([0,x]) >= s}, by inverse linear interpolation in u.
double quantile_map(const GridMeasure& mu, double s);

}  // namespace semiaffine
