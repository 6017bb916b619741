#include "semiaffine/holder.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "semiaffine/affine.hpp"
#include "semiaffine/error.hpp"

namespace semiaffine {

HolderConstants holder_constants(double t, double interval_length, double p, const SystemParams& params) {
  if (!(p > 0.0 && p < 1.0)) throw PreconditionError("p must satisfy 0 < p < 1");
  if (!(t > 0.0) || !(interval_length > 0.0)) throw PreconditionError("need t > 0 and |I| > 0");
  const double a = params.a;
  const double b = params.b;
  const double log_b = std::log(b);
  const double log_plus = std::max(0.0, std::log(t * a));
  const double lap_ratio = std::log((a + b - 1.0) / a);  // > 0
  const double gap = std::log(b / (a + b - 1.0));        // > 0

  HolderConstants c;
  c.q = std::min(p, 1.0 - p);
  c.k_bound = log_plus / log_b + 1.0;
  // log(2 b^(log+(ta)/log b + 3) / a^3)
  const double log_numerator = std::log(2.0) + log_plus + 3.0 * log_b - 3.0 * std::log(a);
  c.c1 = log_numerator * lap_ratio / (log_b * gap) + 1.0;
  c.c2 = lap_ratio / (log_b * gap);
  c.c3 = c.k_bound + c.c1;
  c.c5 = -std::log(c.q) * c.c2;
  return c;
}

namespace {

mpq_class exact_a(const SystemParams& params) { return params.exact_a ? *params.exact_a : mpq_class(params.a); }
mpq_class exact_b(const SystemParams& params) { return params.exact_b ? *params.exact_b : mpq_class(params.b); }

}  // namespace

HolderCertificate holder_certificate(double lo, double hi, double p, const SystemParams& params,
                                     std::size_t max_retries) {
  if (!(lo >= 0.0 && hi > lo && std::isfinite(hi))) {
    throw PreconditionError("certificate interval must satisfy 0 <= lo < hi < inf");
  }
  HolderCertificate cert;
  cert.lo = lo;
  cert.hi = hi;
  cert.center = 0.5 * (lo + hi);
  cert.length = hi - lo;
  cert.constants = holder_constants(cert.center, cert.length, p, params);

  const double a = params.a;
  const double b = params.b;
  const double inv_a = 1.0 / a;

  // T1^{-k}(t) <= 1/a with k minimal.
  double z = cert.center;
  double slope = 1.0;
  while (z > inv_a) {
    z = (z - 1.0) / b;
    slope *= b;
    ++cert.k;
  }

  std::vector<int> branches;
  auto advance = [&] {
    const int branch = z < 1.0 ? 0 : 1;
    z = branch == 0 ? z / a : (z - 1.0) / b;
    slope *= branch == 0 ? a : b;
    branches.push_back(branch);
  };
  const double target = a * cert.length / 2.0;
  while (slope > target) advance();

  const mpq_class qa = exact_a(params);
  const mpq_class qb = exact_b(params);
  const mpq_class qlo(lo);
  const mpq_class qhi(hi);
  const mpq_class q_inv_a = 1 / qa;
  SystemParams exact_params = params;
  exact_params.exact_a = qa;
  exact_params.exact_b = qb;

  for (;;) {
    // The first phi step is the last map applied, so the word lists the
    // branches in reverse, then the k copies of T1.
    Word word;
    for (auto it = branches.rbegin(); it != branches.rend(); ++it) word.push_back(*it);
    for (std::size_t i = 0; i < cert.k; ++i) word.push_back(1);

    const ExactAffineMap map = compose_exact(word, exact_params);
    const mpq_class image0 = map(mpq_class(0));
    const mpq_class image1 = map(q_inv_a);
    const bool inside = image0 >= qlo && image0 <= qhi && image1 >= qlo && image1 <= qhi;
    if (inside) {
      cert.word = std::move(word);
      cert.m = branches.size();
      cert.slope = map.slope.get_d();
      cert.image_of_zero = image0.get_d();
      cert.image_of_inv_a = image1.get_d();
      cert.inclusion_verified = true;
      cert.length_bound = cert.constants.c3 - cert.constants.c2 * std::log(cert.length);
      cert.length_bound_holds = static_cast<double>(cert.k + cert.m) < cert.length_bound;
      return cert;
    }
    if (cert.retries == max_retries) {
      std::ostringstream msg;
      msg << "certificate for [" << lo << ", " << hi << "] failed verification after " << max_retries
          << " retries; image [" << image0.get_d() << ", " << image1.get_d() << "]";
      throw ConvergenceError(msg.str(), std::max(mpq_class(qlo - image0).get_d(), mpq_class(image1 - qhi).get_d()));
    }
    ++cert.retries;
    advance();
  }
}

}  // namespace semiaffine
