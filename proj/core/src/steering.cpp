#include "semiaffine/steering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "semiaffine/affine.hpp"
#include "semiaffine/error.hpp"
#include "semiaffine/holder.hpp"
#include "semiaffine/parallel.hpp"
#include "semiaffine/skew.hpp"

namespace semiaffine {
namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void fill_orbit_stats(SteerResult& result, double x, const SystemParams& params) {
  const PathOrbit orbit = path_orbit(result.word, x, params);
  result.image = orbit.points.back();
  auto [lo, hi] = std::minmax_element(orbit.points.begin(), orbit.points.end());
  result.orbit_min = *lo;
  result.orbit_max = *hi;
  result.slope = word_derivative(result.word, params);
}

SteerResult steer_impl(double x, double y, double epsilon, const SystemParams& params, bool allow_empty) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw PreconditionError("steer needs a finite x >= 0");
  if (!(y > 0.0) || !std::isfinite(y)) throw PreconditionError("steer needs a finite y > 0");
  if (!(epsilon > 0.0)) throw PreconditionError("steer needs epsilon > 0");

  SteerResult result;
  if (allow_empty && std::abs(x - y) < epsilon) {
    fill_orbit_stats(result, x, params);
    result.error = std::abs(result.image - y);
    return result;
  }

  const double inv_a = 1.0 / params.a;
  double z = x;
  while (z > inv_a) {
    z *= params.a;
    result.word.push_back(0);
    ++result.leading_zeros;
  }
  const double lo = std::max(y - epsilon / 2.0, y / 2.0);
  const double hi = y + epsilon / 2.0;
  // The driving measure only enters the certificate's constants, not its word.
  const HolderCertificate cert = holder_certificate(lo, hi, 0.5, params);
  result.word = result.word.concat(cert.word);

  fill_orbit_stats(result, x, params);
  result.error = std::abs(result.image - y);
  if (!(result.error < epsilon)) {
    std::ostringstream msg;
    msg << "steer verification failed: |T_w(" << x << ") - " << y << "| = " << result.error << " >= " << epsilon;
    throw Error(msg.str());
  }
  return result;
}

}  // namespace

SteerResult steer(double x, double y, double epsilon, const SystemParams& params) {
  return steer_impl(x, y, epsilon, params, true);
}

std::vector<ApproxElement> approx_sequence(std::span<const double> targets, const SystemParams& params,
                                           unsigned workers) {
  std::vector<ApproxElement> out(targets.size());
  parallel_for(targets.size(), workers, [&](std::size_t index) {
    const double i = static_cast<double>(index + 1);
    const double target = targets[index];
    if (!(target >= 0.0) || !std::isfinite(target)) throw PreconditionError("targets must be finite and >= 0");
    double y = target;
    double epsilon = 1.0 / (2.0 * i);
    if (y < epsilon / 4.0) {
      // Aim slightly inside the half-line; the total error stays below 1/(2i).
      y = epsilon / 4.0;
      epsilon /= 2.0;
    }
    SteerResult steered = steer_impl(1.0, y, epsilon, params, false);
    ApproxElement element;
    element.word = std::move(steered.word);
    element.target = target;
    auto refresh = [&] {
      const AffineMap map = compose(element.word, params);
      element.image = map(1.0);
      element.slope = map.slope;
      element.error = std::abs(element.image - target);
    };
    refresh();
    while (element.slope >= 1.0 / i) {
      element.word = Word::repeat(0, 1).concat(element.word);
      refresh();
    }
    if (!(element.error < 1.0 / i) || !(element.slope < 1.0 / i)) {
      std::ostringstream msg;
      msg << "approximation element " << index + 1 << " violates its bounds (error " << element.error
          << ", slope " << element.slope << ")";
      throw Error(msg.str());
    }
    out[index] = std::move(element);
  });
  return out;
}

std::vector<ApproxElement> approx_sequence(const std::function<double(CounterRng&)>& sampler, std::size_t count,
                                           const SystemParams& params, std::uint64_t seed, unsigned workers) {
  std::vector<double> targets(count);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(seed, i);
    targets[i] = sampler(rng);
  }
  return approx_sequence(targets, params, workers);
}

Word enumerate_semigroup(std::uint64_t k) {
  if (k == 0) throw PreconditionError("semigroup enumeration is 1-based");
  std::size_t length = 0;
  while (length < 63 && (std::uint64_t{2} << length) - 1 < k) ++length;
  const std::uint64_t offset = k - (std::uint64_t{1} << length);
  return Word::from_index(length, offset);
}

InterleavedSequence::InterleavedSequence(std::vector<Word> input) : input_(std::move(input)) {
  if (input_.empty()) throw PreconditionError("interleaving needs a nonempty input sequence");
}

bool InterleavedSequence::is_inserted(std::uint64_t position) noexcept {
  const std::uint64_t r = isqrt(position);
  return position > 0 && r * r == position;
}

Word InterleavedSequence::at(std::uint64_t position) const {
  if (position == 0) throw PreconditionError("positions are 1-based");
  const std::uint64_t r = isqrt(position);
  if (r * r == position) return enumerate_semigroup(r);
  const std::uint64_t index = position - r - 1;
  if (index >= input_.size()) throw PreconditionError("input sequence exhausted at this position");
  return input_[index];
}

std::uint64_t InterleavedSequence::available() const noexcept {
  const auto n = static_cast<std::uint64_t>(input_.size());
  std::uint64_t length = n;
  while ((length + 1) - isqrt(length + 1) <= n) ++length;
  return length;
}

std::vector<Word> InterleavedSequence::take(std::uint64_t count) const {
  std::vector<Word> out;
  out.reserve(count);
  for (std::uint64_t pos = 1; pos <= count; ++pos) out.push_back(at(pos));
  return out;
}

}  // namespace semiaffine
