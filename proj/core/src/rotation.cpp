#include "semiaffine/rotation.hpp"

#include <cmath>

#include "semiaffine/error.hpp"

namespace semiaffine {

double rotation_number(const SystemParams& params) {
  const double a = params.a;
  const double b = params.b;
  return std::log((a + b - 1.0) / (a * b)) / std::log((a + b - 1.0) / a);
}

double comparison_map(double x, const SystemParams& params) noexcept {
  const double a = params.a;
  const double b = params.b;
  if (x < 1.0) return (1.0 - a) / (a * b) + (a + b - 1.0) / (a * b) * x;
  return (x - 1.0) / b;
}

double rotation_number_numeric(const SystemParams& params, std::size_t iterations, double start) {
  const double a = params.a;
  const double b = params.b;
  if (iterations == 0) throw PreconditionError("rotation estimate needs at least one iteration");
  if (!(start >= 0.0 && start < 1.0 / a)) throw PreconditionError("start must lie in [0, 1/a)");

  // Circle coordinate xi(x) = log(x + 1/(b-1)), circumference log((a+b-1)/a).
  const double shift = 1.0 / (b - 1.0);
  const double circumference = std::log((a + b - 1.0) / a);
  double x = start;
  double wraps = 0.0;
  for (std::size_t i = 0; i < iterations; ++i) {
    // The right lap (x >= 1) passes through the cut point of the circle.
    if (x >= 1.0) wraps += 1.0;
    x = comparison_map(x, params);
  }
  const double net_xi = (std::log(x + shift) - std::log(start + shift)) / circumference;
  return (wraps + net_xi) / static_cast<double>(iterations);
}

}  // namespace semiaffine
