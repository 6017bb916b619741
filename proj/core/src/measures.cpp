#include "semiaffine/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semiaffine/error.hpp"

namespace semiaffine {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier summation; sphere measures carry up to 2^24 atoms.
class CompensatedSum {
 public:
  explicit CompensatedSum(double start = 0.0) : sum_(start) {}
  void add(double x) {
    const double t = sum_ + x;
    carry_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_;
  double carry_ = 0.0;
};

// Visits each distinct location of a u-descending atom list once, reporting
// the cumulative weight strictly before and up to and including it.
template <class Fn>
void for_each_group(std::span<const Atom> atoms, Fn&& fn) {
  CompensatedSum running;
  std::size_t i = 0;
  while (i < atoms.size()) {
    const double u = atoms[i].u;
    const double before = running.value();
    for (; i < atoms.size() && atoms[i].u == u; ++i) running.add(atoms[i].weight);
    fn(u, before, running.value());
  }
}

}  // namespace

double to_compact(double x) noexcept { return x == kInf ? 0.0 : 1.0 / (1.0 + x); }

double from_compact(double u) noexcept { return u == 0.0 ? kInf : 1.0 / u - 1.0; }

// ---------------------------------------------------------------- point masses

PointMassMeasure PointMassMeasure::dirac(double x) {
  const double one = 1.0;
  return from_points(std::span(&x, 1), std::span(&one, 1));
}

PointMassMeasure PointMassMeasure::from_points(std::span<const double> points, std::span<const double> weights) {
  if (points.size() != weights.size()) throw PreconditionError("points and weights differ in length");
  if (points.empty()) throw PreconditionError("a point-mass measure needs at least one atom");
  PointMassMeasure mu;
  mu.atoms_.reserve(points.size());
  CompensatedSum total;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] >= 0.0)) throw PreconditionError("atom locations must lie in [0, inf]");
    if (!(weights[i] >= 0.0)) throw PreconditionError("atom weights must be nonnegative");
    total.add(weights[i]);
    mu.atoms_.push_back({to_compact(points[i]), weights[i]});
  }
  if (std::abs(total.value() - 1.0) > 1e-12) throw PreconditionError("atom weights must sum to 1");
  std::stable_sort(mu.atoms_.begin(), mu.atoms_.end(), [](const Atom& l, const Atom& r) { return l.u > r.u; });
  mu.cumulative_.resize(mu.atoms_.size());
  CompensatedSum running;
  for (std::size_t i = 0; i < mu.atoms_.size(); ++i) {
    running.add(mu.atoms_[i].weight);
    mu.cumulative_[i] = running.value();
  }
  return mu;
}

PointMassMeasure PointMassMeasure::empirical(std::span<const double> points) {
  std::vector<double> weights(points.size(), 1.0 / static_cast<double>(points.size()));
  return from_points(points, weights);
}

double PointMassMeasure::total_mass() const noexcept { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

double PointMassMeasure::cdf(double x) const {
  if (x < 0.0) return 0.0;
  const double u = to_compact(x);
  auto it = std::partition_point(atoms_.begin(), atoms_.end(), [u](const Atom& a) { return a.u >= u; });
  const auto count = static_cast<std::size_t>(it - atoms_.begin());
  return count == 0 ? 0.0 : cumulative_[count - 1];
}

double PointMassMeasure::mass_in(double lo, double hi) const {
  if (hi < lo) return 0.0;
  const double u_lo = to_compact(std::max(lo, 0.0));
  auto it = std::partition_point(atoms_.begin(), atoms_.end(), [u_lo](const Atom& a) { return a.u > u_lo; });
  const auto below = static_cast<std::size_t>(it - atoms_.begin());
  return cdf(hi) - (below == 0 ? 0.0 : cumulative_[below - 1]);
}

double PointMassMeasure::moment(int order) const {
  double sum = 0.0;
  for (const Atom& atom : atoms_) {
    if (atom.weight == 0.0) continue;
    if (atom.u == 0.0) return kInf;
    sum += atom.weight * std::pow(from_compact(atom.u), order);
  }
  return sum;
}

// ------------------------------------------------------------------------ grid

GridMeasure::GridMeasure(std::vector<double> cdf) : cdf_(std::move(cdf)) {
  if (cdf_.size() < 2) throw PreconditionError("a grid measure needs at least two nodes");
  for (std::size_t j = 0; j < cdf_.size(); ++j) {
    if (!(cdf_[j] >= -1e-12 && cdf_[j] <= 1.0 + 1e-12)) throw PreconditionError("grid CDF values must lie in [0, 1]");
    if (j > 0 && cdf_[j] < cdf_[j - 1] - 1e-12) throw PreconditionError("grid CDF must be non-decreasing");
  }
}

GridMeasure GridMeasure::dirac(double x, std::size_t nodes) {
  if (nodes < 2) throw PreconditionError("a grid measure needs at least two nodes");
  std::vector<double> cdf(nodes, 0.0);
  GridMeasure probe;
  probe.cdf_.resize(nodes);
  for (std::size_t j = 0; j < nodes; ++j) cdf[j] = (j + 1 == nodes || probe.x_at(j) >= x) ? 1.0 : 0.0;
  if (x == kInf) cdf.back() = 0.0;
  return GridMeasure(std::move(cdf));
}

GridMeasure GridMeasure::from_cdf(const std::function<double(double)>& cdf, std::size_t nodes) {
  if (nodes < 2) throw PreconditionError("a grid measure needs at least two nodes");
  GridMeasure probe;
  probe.cdf_.resize(nodes);
  std::vector<double> values(nodes);
  for (std::size_t j = 0; j < nodes; ++j) values[j] = cdf(probe.x_at(j));
  return GridMeasure(std::move(values));
}

double GridMeasure::u_at(std::size_t j) const noexcept {
  return 1.0 - static_cast<double>(j) / static_cast<double>(cdf_.size() - 1);
}

double GridMeasure::x_at(std::size_t j) const noexcept {
  return j + 1 == cdf_.size() ? kInf : from_compact(u_at(j));
}

double GridMeasure::cdf(double x) const noexcept {
  if (x < 0.0) return 0.0;
  if (x == kInf) return cdf_.back();
  const double last = static_cast<double>(cdf_.size() - 1);
  const double s = (x / (1.0 + x)) * last;  // = (1 - u) (N - 1)
  const double floor_s = std::floor(s);
  const auto j = static_cast<std::size_t>(floor_s);
  if (j + 1 >= cdf_.size()) return cdf_.back();
  const double frac = s - floor_s;
  return cdf_[j] + frac * (cdf_[j + 1] - cdf_[j]);
}

double GridMeasure::mass_in(double lo, double hi, double slack_cells) const noexcept {
  if (hi < lo) return 0.0;
  const double last = static_cast<double>(cdf_.size() - 1);
  auto at_position = [&](double s) {
    s = std::clamp(s, 0.0, last);
    const double floor_s = std::floor(s);
    const auto j = static_cast<std::size_t>(floor_s);
    if (j + 1 >= cdf_.size()) return cdf_.back();
    return cdf_[j] + (s - floor_s) * (cdf_[j + 1] - cdf_[j]);
  };
  const double s_hi = hi == kInf ? last : (hi / (1.0 + hi)) * last + slack_cells;
  const double upper = at_position(s_hi);
  if (lo <= 0.0) return upper;
  const double s_lo = (lo / (1.0 + lo)) * last - slack_cells;
  return upper - (s_lo < 0.0 ? 0.0 : at_position(s_lo));
}

double GridMeasure::moment(int order) const {
  if (order != 1 && order != 2) throw PreconditionError("grid moments are available for orders 1 and 2");
  const std::size_t n = cdf_.size();
  const double du = cell_width();
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double mass = cdf_[j + 1] - cdf_[j];
    if (mass <= 0.0) continue;
    const double u_hi = u_at(j);
    if (j + 2 == n) {
      // Cell reaching infinity: charged at its finite endpoint.
      sum += mass * std::pow(from_compact(u_hi), order);
      continue;
    }
    const double u_lo = u_at(j + 1);
    const double log_ratio = std::log1p(du / u_lo);
    const double avg = order == 1 ? log_ratio / du - 1.0
                                  : (du / (u_lo * u_hi) - 2.0 * log_ratio + du) / du;
    sum += mass * avg;
  }
  if (mass_at_infinity() > 0.0) return kInf;
  return sum;
}

// --------------------------------------------------------------- Kolmogorov

double kolmogorov_distance(const PointMassMeasure& lhs, const PointMassMeasure& rhs) {
  auto a = lhs.atoms();
  auto b = rhs.atoms();
  std::size_t i = 0;
  std::size_t j = 0;
  double ca = 0.0;
  double cb = 0.0;
  double sup = 0.0;
  while (i < a.size() || j < b.size()) {
    double u = -1.0;
    if (i < a.size()) u = a[i].u;
    if (j < b.size()) u = std::max(u, b[j].u);
    for (; i < a.size() && a[i].u == u; ++i) ca += a[i].weight;
    for (; j < b.size() && b[j].u == u; ++j) cb += b[j].weight;
    sup = std::max(sup, std::abs(ca - cb));
  }
  return sup;
}

double kolmogorov_distance(const PointMassMeasure& lhs, const GridMeasure& rhs) {
  double sup = 0.0;
  for_each_group(lhs.atoms(), [&](double u, double before, double after) {
    if (u == 0.0) {
      sup = std::max({sup, std::abs(before - rhs.cdf_values().back()), std::abs(after - 1.0)});
      return;
    }
    const double g = rhs.cdf(from_compact(u));
    sup = std::max({sup, std::abs(before - g), std::abs(after - g)});
  });
  // Grid nodes against the right-continuous step function.
  auto atoms = lhs.atoms();
  std::size_t i = 0;
  double cum = 0.0;
  for (std::size_t j = 0; j + 1 < rhs.nodes(); ++j) {
    const double u = rhs.u_at(j);
    for (; i < atoms.size() && atoms[i].u >= u; ++i) cum += atoms[i].weight;
    sup = std::max(sup, std::abs(cum - rhs.cdf_values()[j]));
  }
  return sup;
}

double kolmogorov_distance(const GridMeasure& lhs, const PointMassMeasure& rhs) {
  return kolmogorov_distance(rhs, lhs);
}

double kolmogorov_distance(const GridMeasure& lhs, const GridMeasure& rhs) {
  double sup = 0.0;
  if (lhs.nodes() == rhs.nodes()) {
    for (std::size_t j = 0; j < lhs.nodes(); ++j) {
      sup = std::max(sup, std::abs(lhs.cdf_values()[j] - rhs.cdf_values()[j]));
    }
    return sup;
  }
  for (const GridMeasure* grid : {&lhs, &rhs}) {
    for (std::size_t j = 0; j < grid->nodes(); ++j) {
      const double x = grid->x_at(j);
      sup = std::max(sup, std::abs(lhs.cdf(x) - rhs.cdf(x)));
    }
  }
  return sup;
}

double kolmogorov_distance(const PointMassMeasure& lhs, const std::function<double(double)>& cdf) {
  double sup = 0.0;
  for_each_group(lhs.atoms(), [&](double u, double before, double after) {
    const double f = u == 0.0 ? 1.0 : cdf(from_compact(u));
    sup = std::max({sup, std::abs(before - f), std::abs(after - f)});
  });
  return sup;
}

}  // namespace semiaffine
