#include "semiaffine/acim.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "semiaffine/error.hpp"
#include "semiaffine/parallel.hpp"
#include "semiaffine/rng.hpp"
#include "semiaffine/sphere.hpp"

namespace semiaffine {

AcimSystem::AcimSystem(const SystemParams& params, double gamma)
    : params_(params), gamma_(gamma), lo_((gamma - 1.0) / params.b), hi_(gamma / params.a) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw PreconditionError("gamma must be a finite number > 1");

  const mpq_class a = params.exact_a ? *params.exact_a : mpq_class(params.a);
  const mpq_class b = params.exact_b ? *params.exact_b : mpq_class(params.b);
  const mpq_class g(gamma);
  const mpq_class lo = (g - 1) / b;
  const mpq_class hi = g / a;
  // x/a on [lo, g) and (x-1)/b on [g, hi] are increasing, so the branch
  // endpoint images decide whether T(I) lies in I.
  const mpq_class images[] = {lo / a, g / a, (g - 1) / b, (hi - 1) / b};
  for (const auto& y : images) {
    if (y < lo || y > hi) throw PreconditionError("T does not map I into itself for these parameters");
  }
}

double t_map(double x, const AcimSystem& sys) {
  if (!(x >= sys.lo() && x <= sys.hi())) {
    std::ostringstream msg;
    msg << "t_map argument " << x << " lies outside [" << sys.lo() << ", " << sys.hi() << "]";
    throw PreconditionError(msg.str());
  }
  return x < sys.gamma() ? x / sys.params().a : (x - 1.0) / sys.params().b;
}

// ---------------------------------------------------------------------- Ulam

UlamMatrix ulam_matrix(const AcimSystem& sys, std::size_t bins, unsigned workers) {
  if (bins < 1) throw PreconditionError("Ulam matrix needs at least one bin");
  const double lo = sys.lo();
  const double width = (sys.hi() - lo) / static_cast<double>(bins);
  auto edge = [&](std::size_t i) { return i == bins ? sys.hi() : lo + width * static_cast<double>(i); };
  auto bin_of = [&](double y) {
    const double s = std::floor((y - lo) / width);
    return static_cast<std::size_t>(std::clamp(s, 0.0, static_cast<double>(bins - 1)));
  };

  std::vector<std::vector<std::pair<std::size_t, double>>> rows(bins);
  const double a = sys.params().a;
  const double b = sys.params().b;
  const double g = sys.gamma();
  parallel_for(bins, workers, [&](std::size_t i) {
    const double left = edge(i);
    const double right = edge(i + 1);
    std::map<std::size_t, double> entries;
    auto add_piece = [&](double pl, double pr, int branch) {
      const double len = pr - pl;
      if (!(len > 0.0)) return;
      const double yl = branch == 0 ? pl / a : (pl - 1.0) / b;
      const double yr = branch == 0 ? pr / a : (pr - 1.0) / b;
      const double share = len / (right - left);
      for (std::size_t j = bin_of(yl); j <= bin_of(yr); ++j) {
        const double overlap = std::min(yr, edge(j + 1)) - std::max(yl, edge(j));
        if (overlap > 0.0) entries[j] += share * overlap / (yr - yl);
      }
    };
    if (left < g) add_piece(left, std::min(right, g), 0);
    if (right > g) add_piece(std::max(left, g), right, 1);
    rows[i].assign(entries.begin(), entries.end());
  });

  UlamMatrix matrix;
  matrix.bins = bins;
  matrix.row_start.reserve(bins + 1);
  matrix.row_start.push_back(0);
  for (const auto& row : rows) {
    for (const auto& [col, val] : row) {
      matrix.column.push_back(col);
      matrix.value.push_back(val);
    }
    matrix.row_start.push_back(matrix.column.size());
  }
  return matrix;
}

double UlamDensity::bin_left(std::size_t i) const noexcept { return lo + bin_width() * static_cast<double>(i); }

double UlamDensity::bin_right(std::size_t i) const noexcept {
  return i + 1 == mass.size() ? hi : lo + bin_width() * static_cast<double>(i + 1);
}

double UlamDensity::cdf(double x) const noexcept {
  if (x <= lo) return 0.0;
  if (x >= hi) return 1.0;
  const double s = (x - lo) / bin_width();
  const auto i = std::min(static_cast<std::size_t>(s), mass.size() - 1);
  const double below = i == 0 ? 0.0 : cumulative[i - 1];
  return below + mass[i] * std::clamp(s - static_cast<double>(i), 0.0, 1.0);
}

double UlamDensity::quantile(double s) const noexcept {
  auto it = std::lower_bound(cumulative.begin(), cumulative.end(), s);
  const auto i = std::min(static_cast<std::size_t>(it - cumulative.begin()), mass.size() - 1);
  const double below = i == 0 ? 0.0 : cumulative[i - 1];
  const double frac = mass[i] > 0.0 ? std::clamp((s - below) / mass[i], 0.0, 1.0) : 0.0;
  return std::min(bin_left(i) + frac * bin_width(), hi);
}

UlamDensity ulam_density(const AcimSystem& sys, std::size_t bins, const UlamOptions& options) {
  if (bins < 64) throw PreconditionError("Ulam density needs at least 64 bins");
  const UlamMatrix matrix = ulam_matrix(sys, bins, options.workers);

  UlamDensity density;
  density.lo = sys.lo();
  density.hi = sys.hi();
  std::vector<double> v(bins, 1.0 / static_cast<double>(bins));
  std::vector<double> w(bins);
  double residual = 0.0;
  for (std::size_t iter = 0; iter <= options.max_iters; ++iter) {
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < bins; ++i) {
      for (std::size_t e = matrix.row_start[i]; e < matrix.row_start[i + 1]; ++e) {
        w[matrix.column[e]] += v[i] * matrix.value[e];
      }
    }
    double total = 0.0;
    for (double x : w) total += x;
    residual = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
      w[i] /= total;
      residual += std::abs(w[i] - v[i]);
    }
    if (residual <= options.tol) {
      density.mass = std::move(v);
      density.residual = residual;
      density.iterations = iter;
      density.cumulative.resize(bins);
      double running = 0.0;
      for (std::size_t i = 0; i < bins; ++i) density.cumulative[i] = running += density.mass[i];
      return density;
    }
    // Half steps: T may cycle the support components, which leaves the plain
    // iteration oscillating between them.
    for (std::size_t i = 0; i < bins; ++i) v[i] = 0.5 * (v[i] + w[i]);
  }
  std::ostringstream msg;
  msg << "Ulam power iteration did not converge in " << options.max_iters << " iterations (residual "
      << residual << ")";
  throw ConvergenceError(msg.str(), residual);
}

SupportReport support_intervals(const UlamDensity& density, double threshold) {
  const double cutoff = threshold / static_cast<double>(density.bins());
  SupportReport report;
  std::size_t i = 0;
  while (i < density.bins()) {
    if (density.mass[i] <= cutoff) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < density.bins() && density.mass[i] > cutoff) ++i;
    report.intervals.emplace_back(density.bin_left(start), density.bin_right(i - 1));
  }
  if (report.intervals.empty()) throw PreconditionError("no bin exceeds the support threshold");
  report.hull = {report.intervals.front().first, report.intervals.back().second};
  return report;
}

// ---------------------------------------------------------------- itineraries

Word itinerary(double x, std::size_t n, const AcimSystem& sys) {
  if (!(x >= sys.lo() && x <= sys.hi())) throw PreconditionError("itinerary start lies outside I");
  Word word;
  for (std::size_t k = 0; k < n; ++k) {
    word.push_back(sys.branch(x));
    x = t_map(x, sys);
  }
  return word;
}

double CylinderTable::lyapunov(const SystemParams& params) const {
  if (depth == 0) throw PreconditionError("Lyapunov estimate needs depth >= 1");
  const CylinderTable first = marginal(1);
  return first.mass[0] * std::log(params.a) + first.mass[1] * std::log(params.b);
}

CylinderTable CylinderTable::marginal(std::size_t smaller_depth) const {
  if (smaller_depth > depth) throw PreconditionError("marginal depth exceeds table depth");
  CylinderTable out;
  out.depth = smaller_depth;
  out.samples = samples;
  out.mass.assign(std::size_t{1} << smaller_depth, 0.0);
  const std::size_t drop = depth - smaller_depth;
  for (std::size_t i = 0; i < mass.size(); ++i) out.mass[i >> drop] += mass[i];
  return out;
}

CylinderTable nu_gamma_cylinders(const AcimSystem& sys, const UlamDensity& density, std::size_t depth,
                                 std::uint64_t samples, std::uint64_t seed, const CylinderOptions& options) {
  if (depth > 12) throw PreconditionError("cylinder depth is limited to 12");
  const std::uint64_t cells = std::uint64_t{1} << depth;
  if (samples < 16 * cells) {
    throw PreconditionError("too few samples: need at least 16 per cylinder (" + std::to_string(16 * cells) + ")");
  }
  const std::uint64_t orbit_length = std::max<std::uint64_t>(1, options.orbit_length);
  const std::uint64_t orbits = (samples + orbit_length - 1) / orbit_length;

  std::vector<std::vector<std::uint64_t>> counts(orbits);
  parallel_for(orbits, options.workers, [&](std::size_t o) {
    const std::uint64_t windows = std::min(orbit_length, samples - o * orbit_length);
    CounterRng rng(seed, o);
    double x = density.quantile(rng.uniform());
    for (std::size_t i = 0; i < options.burn_in; ++i) x = t_map(x, sys);
    std::vector<int> symbols(windows + depth);
    for (auto& s : symbols) {
      s = sys.branch(x);
      x = t_map(x, sys);
    }
    auto& local = counts[o];
    local.assign(cells, 0);
    for (std::uint64_t start = 0; start < windows; ++start) {
      // Word w = reverse(block): its first symbol is the block's last, so the
      // block's first symbol becomes the least significant bit of w.index().
      std::uint64_t index = 0;
      for (std::size_t i = 0; i < depth; ++i) index |= static_cast<std::uint64_t>(symbols[start + i]) << i;
      ++local[index];
    }
  });

  std::vector<std::uint64_t> total(cells, 0);
  for (const auto& local : counts) {
    for (std::size_t i = 0; i < cells; ++i) total[i] += local[i];
  }
  CylinderTable table;
  table.depth = depth;
  table.samples = samples;
  table.mass.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) table.mass[i] = static_cast<double>(total[i]) / static_cast<double>(samples);
  return table;
}

double cylinder_roundtrip(const AcimSystem& sys, const UlamDensity& density, const CylinderTable& table, double x,
                           std::size_t n) {
  if (n > 10 || n > table.depth) throw PreconditionError("round trip needs n <= 10 and n <= table depth");
  const CylinderTable weights = table.marginal(n);
  SphereOptions options;
  options.workers = 1;
  const SphereAtoms atoms = sphere_atoms_weighted(weights.mass, x, n, sys.params(), options);
  const PointMassMeasure sphere = PointMassMeasure::from_points(atoms.points, atoms.weights);
  return kolmogorov_distance(sphere, std::function<double(double)>([&](double y) { return density.cdf(y); }));
}

}  // namespace semiaffine
