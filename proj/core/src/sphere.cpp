#include "semiaffine/sphere.hpp"

#include <bit>
#include <functional>

#include "semiaffine/error.hpp"
#include "semiaffine/parallel.hpp"
#include "semiaffine/skew.hpp"

namespace semiaffine {
namespace {

// Weight of appending `symbol` after `last` (-1 at the start of the word).
using Extend = std::function<double(double weight, int last, int symbol)>;

struct Enumeration {
  std::size_t n;
  double x;
  const SystemParams& params;
  const SphereOptions& options;
  Extend extend;
  bool use_table;
  std::span<const double> table;
};

std::size_t split_depth(std::size_t n, unsigned workers) {
  const unsigned w = resolve_workers(workers);
  const auto bits = static_cast<std::size_t>(std::bit_width(w - 1U));  // ceil(log2 w)
  return std::min(n, bits);
}

SphereAtoms enumerate(const Enumeration& e) {
  if (e.options.prune_threshold <= 0.0 && e.n > e.options.depth_cap) {
    throw PreconditionError("sphere depth " + std::to_string(e.n) + " exceeds the cap of " +
                            std::to_string(e.options.depth_cap));
  }
  if (e.n > 40) throw PreconditionError("sphere depth above 40 is not supported");
  if (!(e.x >= 0.0)) throw PreconditionError("sphere start must lie in [0, inf]");

  const std::size_t split = split_depth(e.n, e.options.workers);
  const std::size_t rest = e.n - split;
  const std::uint64_t blocks = std::uint64_t{1} << split;
  const bool pruning = e.options.prune_threshold > 0.0;

  SphereAtoms out;
  std::vector<SphereAtoms> pieces;
  if (pruning) {
    pieces.resize(blocks);
  } else {
    out.points.resize(std::uint64_t{1} << e.n);
    out.weights.resize(std::uint64_t{1} << e.n);
  }

  parallel_for(blocks, e.options.workers, [&](std::size_t block) {
    double y = e.x;
    double w = 1.0;
    int last = -1;
    for (std::size_t i = 0; i < split; ++i) {
      const int s = static_cast<int>((block >> (split - 1 - i)) & 1U);
      w = e.extend(w, last, s);
      y = step(s, y, e.params);
      last = s;
    }
    SphereAtoms* piece = pruning ? &pieces[block] : nullptr;

    auto dfs = [&](auto&& self, double point, double weight, int prev, std::size_t depth,
                   std::uint64_t index) -> void {
      if (depth == 0) {
        const double leaf_weight = e.use_table ? e.table[index] : weight;
        if (piece) {
          piece->points.push_back(point);
          piece->weights.push_back(leaf_weight);
        } else {
          out.points[index] = point;
          out.weights[index] = leaf_weight;
        }
        return;
      }
      if (piece && !e.use_table && weight < e.options.prune_threshold) {
        piece->points.push_back(point);
        piece->weights.push_back(weight);
        return;
      }
      for (int s = 0; s < 2; ++s) {
        self(self, step(s, point, e.params), e.extend(weight, prev, s), s, depth - 1,
             (index << 1) | static_cast<std::uint64_t>(s));
      }
    };
    dfs(dfs, y, w, last, rest, static_cast<std::uint64_t>(block));
  });

  if (pruning) {
    for (auto& piece : pieces) {
      out.points.insert(out.points.end(), piece.points.begin(), piece.points.end());
      out.weights.insert(out.weights.end(), piece.weights.begin(), piece.weights.end());
    }
  }
  return out;
}

}  // namespace

SphereAtoms sphere_atoms(const ShiftMeasure& nu, double x, std::size_t n, const SystemParams& params,
                         const SphereOptions& options) {
  Enumeration e{n, x, params, options,
                [&nu](double weight, int last, int symbol) {
                  return weight * (last < 0 ? nu.initial(symbol) : nu.transition(last, symbol));
                },
                false, {}};
  return enumerate(e);
}

SphereAtoms sphere_atoms_weighted(std::span<const double> word_weights, double x, std::size_t n,
                                  const SystemParams& params, const SphereOptions& options) {
  if (word_weights.size() != (std::size_t{1} << n)) {
    throw PreconditionError("weight table must have 2^n entries");
  }
  SphereOptions exact = options;
  exact.prune_threshold = 0.0;
  Enumeration e{n, x, params, exact, [](double weight, int, int) { return weight; }, true, word_weights};
  return enumerate(e);
}

PointMassMeasure sphere_measure(const ShiftMeasure& nu, double x, std::size_t n, const SystemParams& params,
                                const SphereOptions& options) {
  const SphereAtoms atoms = sphere_atoms(nu, x, n, params, options);
  return PointMassMeasure::from_points(atoms.points, atoms.weights);
}

double refinement_check(const ShiftMeasure& nu, double x, std::size_t n, const SystemParams& params,
                        const SphereOptions& options) {
  if (!nu.is_bernoulli()) {
    throw PreconditionError("the one-step refinement identity holds only for Bernoulli measures");
  }
  const double p = nu.bernoulli_p();
  const SphereAtoms current = sphere_atoms(nu, x, n, params, options);
  const SphereAtoms next = sphere_atoms(nu, x, n + 1, params, options);

  SphereAtoms pushed;
  pushed.points.reserve(2 * current.points.size());
  pushed.weights.reserve(2 * current.points.size());
  for (std::size_t i = 0; i < current.points.size(); ++i) {
    pushed.points.push_back(step(0, current.points[i], params));
    pushed.weights.push_back(current.weights[i] * p);
    pushed.points.push_back(step(1, current.points[i], params));
    pushed.weights.push_back(current.weights[i] * (1.0 - p));
  }
  return kolmogorov_distance(PointMassMeasure::from_points(next.points, next.weights),
                             PointMassMeasure::from_points(pushed.points, pushed.weights));
}

}  // namespace semiaffine
