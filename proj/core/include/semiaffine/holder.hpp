#pragma once

#include <cstddef>

#include "semiaffine/params.hpp"
#include "semiaffine/word.hpp"

namespace semiaffine {

/// Constants of the lower bound log mu(I) > c4(t) + c5 log|I| for an interval
/// of length |I| centred at t, under a Bernoulli(p) driving measure.
struct HolderConstants {
  double k_bound = 0.0;  // log+(t a)/log b + 1, a strict upper bound on k
  double c1 = 0.0;       // depends on t
  double c2 = 0.0;
  double c3 = 0.0;       // k_bound + c1
  double c5 = 0.0;       // -log(q) * c2
  double q = 0.0;        // min(p, 1-p)
};

HolderConstants holder_constants(double t, double interval_length, double p,
                                 const SystemParams& params);

/// A word w of length k + m with T_w([0, 1/a]) inside I = [lo, hi]; k inverse
/// T1 steps bring the centre into [0, 1/a], then m steps of
/// phi(x) = x/a (x < 1), (x-1)/b (x >= 1) follow until the forward slope is
/// at most a|I|/2.
struct HolderCertificate {
  double lo = 0.0;
  double hi = 0.0;
  double center = 0.0;
  double length = 0.0;
  std::size_t k = 0;
  std::size_t m = 0;
  Word word;
  HolderConstants constants;
  double slope = 0.0;
  double image_of_zero = 0.0;      // T_w(0)
  double image_of_inv_a = 0.0;     // T_w(1/a)
  bool inclusion_verified = false;  // exact rational check of both images
  double length_bound = 0.0;        // c3 - c2 log|I|
  bool length_bound_holds = false;  // k + m < length_bound
  std::size_t retries = 0;
};

/// Requires 0 <= lo < hi. Verification is exact: both endpoint images are
/// evaluated in rational arithmetic (the floating parameters are themselves
/// rationals). On a rounding failure m is extended, up to `max_retries` times,
/// before ConvergenceError is thrown.
HolderCertificate holder_certificate(double lo, double hi, double p, const SystemParams& params,
                                     std::size_t max_retries = 64);

}  // namespace semiaffine
