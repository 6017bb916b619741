#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "semiaffine/measures.hpp"
#include "semiaffine/params.hpp"
#include "semiaffine/word.hpp"

namespace semiaffine {

/// The piecewise map T on I = [(g-1)/b, g/a]: x/a on I0 = [(g-1)/b, g),
/// (x-1)/b on I1 = [g, g/a]. Construction checks exactly that T(I) is in I.
class AcimSystem {
 public:
  AcimSystem(const SystemParams& params, double gamma);

  const SystemParams& params() const noexcept { return params_; }
  double gamma() const noexcept { return gamma_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  /// 0 on I0, 1 on I1.
  int branch(double x) const noexcept { return x < gamma_ ? 0 : 1; }

 private:
  SystemParams params_;
  double gamma_;
  double lo_;
  double hi_;
};

/// Throws PreconditionError outside I.
double t_map(double x, const AcimSystem& sys);

/// Sparse row-stochastic Ulam matrix on K uniform bins of I: entry (i, j) is the
/// fraction of bin i that T sends into bin j.
struct UlamMatrix {
  std::size_t bins = 0;
  std::vector<std::size_t> row_start;  // CSR
  std::vector<std::size_t> column;
  std::vector<double> value;
};

UlamMatrix ulam_matrix(const AcimSystem& sys, std::size_t bins, unsigned workers = 0);

struct UlamOptions {
  std::size_t max_iters = 100000;
  double tol = 1e-12;  // L1 change between iterates
  unsigned workers = 0;
};

struct UlamDensity {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> mass;  // per bin, sums to 1
  std::vector<double> cumulative;  // running sums of mass
  double residual = 0.0;     // || v P - v ||_1
  std::size_t iterations = 0;

  std::size_t bins() const noexcept { return mass.size(); }
  double bin_width() const noexcept { return (hi - lo) / static_cast<double>(mass.size()); }
  double bin_left(std::size_t i) const noexcept;
  double bin_right(std::size_t i) const noexcept;
  /// Distribution function of the piecewise-constant density.
  double cdf(double x) const noexcept;
  /// Sample by inverse CDF on the bins.
  double quantile(double s) const noexcept;
};

/// Invariant vector by damped power iteration v <- (v + vP)/2 from the uniform
/// vector; stops when the L1 norm of vP - v is below tol. Requires K >= 64.
UlamDensity ulam_density(const AcimSystem& sys, std::size_t bins, const UlamOptions& options = {});

struct SupportReport {
  std::vector<std::pair<double, double>> intervals;
  std::pair<double, double> hull;
};

/// Maximal runs of bins whose mass exceeds threshold / K.
SupportReport support_intervals(const UlamDensity& density, double threshold);

/// Symbols of x, T x, ..., T^{n-1} x.
Word itinerary(double x, std::size_t n, const AcimSystem& sys);

/// Empirical cylinder masses of the measure read backwards along itineraries:
/// mass[w.index()] is the frequency of the block reverse(w).
struct CylinderTable {
  std::size_t depth = 0;
  std::vector<double> mass;
  std::uint64_t samples = 0;

  double operator[](const Word& word) const { return mass.at(word.index()); }
  /// nu(C_0) ln a + nu(C_1) ln b from the depth-1 marginal.
  double lyapunov(const SystemParams& params) const;
  /// The table at a smaller depth, by summing out the last symbols.
  CylinderTable marginal(std::size_t smaller_depth) const;
};

struct CylinderOptions {
  std::size_t orbit_length = 1000;
  std::size_t burn_in = 1000;
  unsigned workers = 0;
};

/// `samples` windows of length `depth` taken from independent T-orbits whose
/// starting points are drawn from the density. Throws PreconditionError for
/// depth > 12 or fewer than 16 samples per cylinder.
CylinderTable nu_gamma_cylinders(const AcimSystem& sys, const UlamDensity& density, std::size_t depth,
                                 std::uint64_t samples, std::uint64_t seed,
                                 const CylinderOptions& options = {});

/// Kolmogorov distance between sum_w table(w) delta_{T_w x} over words of length n
/// and the Ulam measure. Requires n <= table depth and n <= 10.
double cylinder_roundtrip(const AcimSystem& sys, const UlamDensity& density, const CylinderTable& table,
                           double x, std::size_t n);

}  // namespace semiaffine
