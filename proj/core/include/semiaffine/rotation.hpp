#pragma once

#include <cstddef>

#include "semiaffine/params.hpp"

namespace semiaffine {

/// log((a+b-1)/(ab)) / log((a+b-1)/a): the rotation number of the circle
/// homeomorphism psi on [0, 1/a) that bounds the branch statistics of phi.
double rotation_number(const SystemParams& params);

/// Average lift displacement of psi over `iterations` steps, measured on the
/// circle of normalized length 1 obtained through xi(x) = log(x + 1/(b-1)).
double rotation_number_numeric(const SystemParams& params, std::size_t iterations,
                               double start = 0.0);

/// psi(x) = (1-a)/(ab) + (a+b-1)/(ab) x for x < 1, (x-1)/b otherwise.
double comparison_map(double x, const SystemParams& params) noexcept;

}  // namespace semiaffine
