#pragma once

// Independent reference computations. Nothing here calls the code paths it is
// used to check: maps are obtained by applying generators to sample points,
// sphere averages by breadth-first expansion, and distances by brute force.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct Rational2 {
  mpq_class slope, intercept;
};

/// Applies the generators symbol by symbol to 0 and 1; the images determine
/// the affine map.
inline Rational2 map_by_application(const std::string& word, const mpq_class& a, const mpq_class& b) {
  mpq_class at0 = 0, at1 = 1;
  for (char c : word) {
    if (c == '0') {
      at0 = a * at0;
      at1 = a * at1;
    } else {
      at0 = b * at0 + 1;
      at1 = b * at1 + 1;
    }
  }
  return {mpq_class(at1 - at0), at0};
}

struct Atoms {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Level-by-level expansion of x under both generators, Bernoulli(p) weights.
inline Atoms sphere_bfs(double x, int n, double a, double b, double p) {
  Atoms level{{x}, {1.0}};
  for (int k = 0; k < n; ++k) {
    Atoms next;
    for (std::size_t i = 0; i < level.points.size(); ++i) {
      next.points.push_back(a * level.points[i]);
      next.weights.push_back(level.weights[i] * p);
      next.points.push_back(b * level.points[i] + 1.0);
      next.weights.push_back(level.weights[i] * (1.0 - p));
    }
    level = std::move(next);
  }
  return level;
}

inline double step_cdf(const Atoms& m, double t) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    if (m.points[i] <= t) s += m.weights[i];
  }
  return s;
}

/// sup |F1 - F2| checked at every atom, where step functions jump.
inline double ks_brute(const Atoms& lhs, const Atoms& rhs) {
  std::vector<double> cuts = lhs.points;
  cuts.insert(cuts.end(), rhs.points.begin(), rhs.points.end());
  double best = 0.0;
  for (double t : cuts) best = std::max(best, std::abs(step_cdf(lhs, t) - step_cdf(rhs, t)));
  return best;
}

/// Against a continuous CDF: both one-sided limits at every atom.
inline double ks_brute(const Atoms& lhs, const std::function<double(double)>& cdf) {
  double best = 0.0;
  for (double t : lhs.points) {
    double below = 0.0;
    for (std::size_t i = 0; i < lhs.points.size(); ++i) {
      if (lhs.points[i] < t) below += lhs.weights[i];
    }
    best = std::max({best, std::abs(step_cdf(lhs, t) - cdf(t)), std::abs(below - cdf(t))});
  }
  return best;
}

inline double harmonic(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

}  // namespace oracle
