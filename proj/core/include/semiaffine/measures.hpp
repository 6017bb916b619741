#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace semiaffine {

/// u = 1/(1+x) maps [0, inf] onto [1, 0]; infinity maps to 0.
double to_compact(double x) noexcept;
double from_compact(double u) noexcept;

struct Atom {
  double u;
  double weight;
};

/// A finite probability measure of point masses on the compactified half-line.
/// Atoms are kept sorted by increasing x (decreasing u); ties keep input order.
class PointMassMeasure {
 public:
  PointMassMeasure() = default;

  static PointMassMeasure dirac(double x);

  /// Validates weights (nonnegative, summing to 1 within 1e-12).
  static PointMassMeasure from_points(std::span<const double> points, std::span<const double> weights);

  /// Uniform weights 1/n.
  static PointMassMeasure empirical(std::span<const double> points);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  double total_mass() const noexcept;

  /// mu([0, x]).
  double cdf(double x) const;
  /// mu([lo, hi]).
  double mass_in(double lo, double hi) const;

  /// E[x^order] over the finite atoms; +inf when an atom sits at infinity.
  double moment(int order) const;
  double mean() const { return moment(1); }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;  // cumulative_[i] = weight of atoms 0..i
};

/// Probability measure on [0, inf] stored as its distribution function at the
/// nodes of a uniform grid in u. Node j sits at u_j = 1 - j/(N-1), so x_0 = 0
/// and x_{N-1} = inf; cdf[j] = mu([0, x_j]) and the value at the last node is
/// the limit at infinity, so mass_at_infinity = 1 - cdf[N-1]. Between nodes the
/// distribution function is linear in u.
class GridMeasure {
 public:
  GridMeasure() = default;
  explicit GridMeasure(std::vector<double> cdf);

  static GridMeasure dirac(double x, std::size_t nodes);
  /// Samples a distribution function of x (F(inf) taken as its limit value).
  static GridMeasure from_cdf(const std::function<double(double)>& cdf, std::size_t nodes);

  std::size_t nodes() const noexcept { return cdf_.size(); }
  double cell_width() const noexcept { return 1.0 / static_cast<double>(cdf_.size() - 1); }
  double u_at(std::size_t j) const noexcept;
  double x_at(std::size_t j) const noexcept;
  std::span<const double> cdf_values() const noexcept { return cdf_; }

  /// mu([0, x]) by linear interpolation in u; x < 0 gives 0.
  double cdf(double x) const noexcept;
  double mass_at_infinity() const noexcept { return 1.0 - cdf_.back(); }

  /// mu([lo, hi]) with each endpoint pushed outward by `slack_cells` grid cells.
  double mass_in(double lo, double hi, double slack_cells = 0.0) const noexcept;

  /// Moments with the mass of each cell spread uniformly in u. The cell that
  /// touches infinity is charged at its finite endpoint.
  double moment(int order) const;
  double mean() const { return moment(1); }

 private:
  std::vector<double> cdf_;
};

/// sup over cuts of |F1 - F2|; invariant under the change of variable to u, and
/// exact for every pairing below (step vs step, step vs piecewise linear).
double kolmogorov_distance(const PointMassMeasure& lhs, const PointMassMeasure& rhs);
double kolmogorov_distance(const PointMassMeasure& lhs, const GridMeasure& rhs);
double kolmogorov_distance(const GridMeasure& lhs, const PointMassMeasure& rhs);
double kolmogorov_distance(const GridMeasure& lhs, const GridMeasure& rhs);

/// Against a continuous distribution function of x on [0, inf).
double kolmogorov_distance(const PointMassMeasure& lhs, const std::function<double(double)>& cdf);

}  // namespace semiaffine
