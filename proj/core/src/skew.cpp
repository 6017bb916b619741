#include "semiaffine/skew.hpp"

#include <gmpxx.h>

#include <cmath>
#include <limits>

#include "semiaffine/error.hpp"
#include "semiaffine/rng.hpp"

namespace semiaffine {
namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double step(int symbol, double x, const SystemParams& params) noexcept {
  if (x == kInf) return kInf;
  const double next = symbol == 0 ? params.a * x : params.b * x + 1.0;
  return next > kOverflowThreshold ? kInf : next;
}

PathOrbit path_orbit(const Word& word, double x0, const SystemParams& params) {
  if (!(x0 >= 0.0)) throw PreconditionError("orbit start must lie in [0, inf]");
  PathOrbit orbit;
  orbit.points.reserve(word.size() + 1);
  orbit.points.push_back(x0);
  double x = x0;
  for (std::size_t k = 0; k < word.size(); ++k) {
    const double next = step(word[k], x, params);
    if (next == kInf && x != kInf && !orbit.overflow_step) orbit.overflow_step = k + 1;
    x = next;
    orbit.points.push_back(x);
  }
  return orbit;
}

std::vector<double> path_points(const ShiftMeasure& nu, double x0, std::size_t n, std::uint64_t seed,
                                const SystemParams& params) {
  if (n < 1) throw PreconditionError("path average needs n >= 1");
  if (!(x0 >= 0.0)) throw PreconditionError("orbit start must lie in [0, inf]");
  const Word word = nu.sample_path(n, seed);
  std::vector<double> points(n);
  double x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    points[k] = x;
    x = step(word[k], x, params);
  }
  return points;
}

PointMassMeasure path_average(const ShiftMeasure& nu, double x0, std::size_t n, std::uint64_t seed,
                              const SystemParams& params) {
  return PointMassMeasure::empirical(path_points(nu, x0, n, seed, params));
}

double compact_metric(double x, double y) noexcept { return std::abs(to_compact(x) - to_compact(y)); }

ContractionReport contraction_diagnostics(double x, double y, const Word& word, const SystemParams& params) {
  if (!(x > 0.0 && y > 0.0) || x == kInf || y == kInf) {
    throw PreconditionError("contraction diagnostics need finite x, y > 0");
  }
  ContractionReport report;
  report.rows.reserve(word.size() + 1);

  if (params.has_exact()) {
    // Both orbits in rational arithmetic: the monotonicity check compares the
    // ratios max(x/y, y/x) exactly, and the table entries are rounded once.
    mpq_class xs(x);
    mpq_class ys(y);
    mpq_class previous;
    const mpq_class& a = *params.exact_a;
    const mpq_class& b = *params.exact_b;
    for (std::size_t k = 0;; ++k) {
      const mpq_class& small = xs < ys ? xs : ys;
      const mpq_class gap = abs(xs - ys);
      const mpq_class ratio = 1 + gap / small;
      if (k > 0 && ratio > previous) {
        if (report.log_nonincreasing) report.first_increase = k;
        report.log_nonincreasing = false;
      }
      previous = ratio;
      const double log_distance = std::log1p(mpq_class(gap / small).get_d());
      const double compact_distance = mpq_class(gap / ((1 + xs) * (1 + ys))).get_d();
      if (compact_distance > 0.25 * log_distance * (1.0 + 1e-12)) report.quarter_bound = false;
      report.rows.push_back({log_distance, compact_distance});
      if (k == word.size()) break;
      if (word[k] == 0) {
        xs *= a;
        ys *= a;
      } else {
        xs = b * xs + 1;
        ys = b * ys + 1;
      }
    }
    return report;
  }

  auto record = [&](double xk, double yk) {
    const double log_distance = std::abs(std::log(xk / yk));
    const double compact_distance = compact_metric(xk, yk);
    if (!report.rows.empty() && log_distance > report.rows.back().log_distance) {
      if (report.log_nonincreasing) report.first_increase = report.rows.size();
      report.log_nonincreasing = false;
    }
    if (compact_distance > 0.25 * log_distance + 1e-15) report.quarter_bound = false;
    report.rows.push_back({log_distance, compact_distance});
  };
  record(x, y);
  for (std::size_t k = 0; k < word.size(); ++k) {
    x = step(word[k], x, params);
    y = step(word[k], y, params);
    record(x, y);
  }
  return report;
}

}  // namespace semiaffine
