#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace semiaffine {

/// Parses "num/den", an integer, or a finite decimal ("0.25", "1e-3" is not
/// accepted) into an exact rational.
mpq_class parse_rational(std::string_view text);

/// The generator pair T0(x) = a x and T1(x) = b x + 1 with 0 < a < 1 < b.
///
/// The floating slopes are always present; exact rational copies exist when the
/// parameters were given as rationals and enable the exact code paths.
struct SystemParams {
  double a = 0.5;
  double b = 1.5;
  std::optional<mpq_class> exact_a;
  std::optional<mpq_class> exact_b;

  static SystemParams make(double a, double b);
  static SystemParams exact(const mpq_class& a, const mpq_class& b);
  /// Accepts rational or decimal strings; the result always has exact copies.
  static SystemParams parse(std::string_view a, std::string_view b);

  bool has_exact() const noexcept { return exact_a.has_value() && exact_b.has_value(); }

  std::string describe() const;
};

}  // namespace semiaffine
