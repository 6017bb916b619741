#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "semiaffine/measures.hpp"
#include "semiaffine/params.hpp"
#include "semiaffine/shift_measure.hpp"

namespace semiaffine {

struct SphereOptions {
  std::size_t depth_cap = 24;
  unsigned workers = 0;
  /// Subtrees whose cylinder weight drops below this are collapsed onto their
  /// current image point. Approximate; 0 disables pruning and enforces the cap.
  double prune_threshold = 0.0;
};

/// Raw atoms of a sphere average in word order (first symbol most significant).
/// With pruning enabled the order is still deterministic but atoms are fewer.
struct SphereAtoms {
  std::vector<double> points;
  std::vector<double> weights;
};

/// Atoms T_w(x) weighted by nu(C_w) over all words of length n.
SphereAtoms sphere_atoms(const ShiftMeasure& nu, double x, std::size_t n, const SystemParams& params,
                         const SphereOptions& options = {});

/// Atoms T_w(x) weighted by an explicit table indexed by Word::index().
SphereAtoms sphere_atoms_weighted(std::span<const double> word_weights, double x, std::size_t n,
                                  const SystemParams& params, const SphereOptions& options = {});

PointMassMeasure sphere_measure(const ShiftMeasure& nu, double x, std::size_t n,
                                const SystemParams& params, const SphereOptions& options = {});

/// Kolmogorov distance between the sphere average at n+1 and the
/// p T0_* + (1-p) T1_* image of the sphere average at n. Bernoulli only.
double refinement_check(const ShiftMeasure& nu, double x, std::size_t n, const SystemParams& params,
                        const SphereOptions& options = {});

}  // namespace semiaffine
