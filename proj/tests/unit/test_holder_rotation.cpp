#include <cmath>

#include "doctest.h"
#include "semiaffine/affine.hpp"
#include "semiaffine/error.hpp"
#include "semiaffine/holder.hpp"
#include "semiaffine/rotation.hpp"
#include "semiaffine/stationary.hpp"

using namespace semiaffine;

namespace {

// Direct transcription of the constants, written independently of holder.cpp.
double c1_formula(double t, double a, double b) {
  const double log_plus = std::max(0.0, std::log(t * a));
  const double numerator = 2.0 * std::pow(b, log_plus / std::log(b) + 3.0) / (a * a * a);
  return std::log(numerator) * std::log((a + b - 1.0) / a) / (std::log(b) * std::log(b / (a + b - 1.0))) + 1.0;
}

}  // namespace

TEST_SUITE("holder") {
  const auto params = SystemParams::parse("1/2", "3/2");

  TEST_CASE("constants") {
    const auto c = holder_constants(10.0, 0.1, 0.5, params);
    CHECK(c.c2 == doctest::Approx(4.21617).epsilon(1e-5));
    CHECK(c.c5 == doctest::Approx(2.92243).epsilon(1e-5));
    CHECK(c.c5 == doctest::Approx(-std::log(c.q) * c.c2));
    CHECK(c.q == 0.5);
    CHECK(c.c1 == doctest::Approx(c1_formula(10.0, 0.5, 1.5)).epsilon(1e-12));
    CHECK(c.c3 == doctest::Approx(c.k_bound + c.c1));

    const auto low = holder_constants(1.5, 0.1, 0.3, params);
    CHECK(low.k_bound == 1.0);
    CHECK(low.q == doctest::Approx(0.3));
    CHECK(low.c1 == doctest::Approx(c1_formula(1.5, 0.5, 1.5)).epsilon(1e-12));

    CHECK_THROWS_AS(holder_constants(1.0, 0.1, 1.0, params), PreconditionError);
    CHECK_THROWS_AS(holder_constants(0.0, 0.1, 0.5, params), PreconditionError);
  }

  TEST_CASE("centre already below 1/a needs no inverse steps") {
    const auto cert = holder_certificate(1.0, 1.2, 0.5, params);
    CHECK(cert.k == 0);
    CHECK(cert.inclusion_verified);
  }

  TEST_CASE("certificate for [9.95, 10.05]") {
    const auto cert = holder_certificate(9.95, 10.05, 0.5, params);
    CHECK(cert.inclusion_verified);
    CHECK(cert.k >= 1);
    CHECK(static_cast<double>(cert.k) < cert.constants.k_bound);
    CHECK(cert.word.size() == cert.k + cert.m);
    CHECK(cert.length_bound_holds);
    CHECK(static_cast<double>(cert.k + cert.m) < cert.length_bound);
    CHECK(cert.slope <= 0.5 * cert.length / 2.0 + 1e-15);

    const auto map = compose_exact(cert.word, params);
    const mpq_class lo(9.95), hi(10.05);
    const mpq_class i0 = map(mpq_class(0)), i1 = map(mpq_class(2));
    CHECK(i0 >= lo);
    CHECK(i1 <= hi);
    CHECK(i0 <= i1);
  }

  TEST_CASE("an interval containing [0, 1/a] needs the empty word") {
    const auto cert = holder_certificate(0.0, 4.0, 0.5, params);
    CHECK(cert.k == 0);
    CHECK(cert.m == 0);
    CHECK(cert.word.empty());
  }

  TEST_CASE("length bound across scales") {
    for (double len : {1.0, 1e-1, 1e-2, 1e-3, 1e-4}) {
      for (double t : {0.5, 3.0, 40.0}) {
        const double lo = std::max(0.0, t - len / 2);
        const auto cert = holder_certificate(lo, lo + len, 0.5, params);
        CHECK(cert.inclusion_verified);
        CHECK(cert.length_bound_holds);
      }
    }
  }

  TEST_CASE("stationary mass is bounded below through the certificate word") {
    const double p = 0.5;
    const auto sol = solve_stationary(p, params, {.grid = 1 << 14, .tol = 1e-9});
    const auto cert = holder_certificate(1.9, 2.1, p, params);
    double cylinder = 1.0;
    for (std::size_t i = 0; i < cert.word.size(); ++i) cylinder *= cert.word[i] == 0 ? p : 1 - p;
    const double base = sol.measure.mass_in(0.0, 2.0);
    CHECK(sol.measure.mass_in(1.9, 2.1, 1.0) >= cylinder * base);
    const double log_bound = (cert.constants.c3 - cert.constants.c2 * std::log(0.2)) * std::log(cert.constants.q) +
                             std::log(base);
    CHECK(std::log(sol.measure.mass_in(1.9, 2.1, 1.0)) > log_bound);
  }

  TEST_CASE("bad intervals") {
    CHECK_THROWS_AS(holder_certificate(2.0, 1.0, 0.5, params), PreconditionError);
    CHECK_THROWS_AS(holder_certificate(-1.0, 1.0, 0.5, params), PreconditionError);
  }
}

TEST_SUITE("rotation") {
  TEST_CASE("closed form") {
    const auto params = SystemParams::make(0.5, 1.5);
    CHECK(rotation_number(params) == doctest::Approx(0.41504).epsilon(1e-4));
    CHECK(rotation_number_numeric(params, 200000) == doctest::Approx(rotation_number(params)).epsilon(1e-5));
    CHECK(rotation_number_numeric(params, 200000, 1.3) == doctest::Approx(rotation_number(params)).epsilon(1e-5));
  }

  TEST_CASE("rotation number lies in (0, 1)") {
    for (double a : {0.2, 0.5, 0.8}) {
      for (double b : {1.1, 1.5, 3.0}) {
        if (a * b >= 1.0) continue;
        const double rho = rotation_number(SystemParams::make(a, b));
        CHECK(rho > 0.0);
        CHECK(rho < 1.0);
      }
    }
  }

  TEST_CASE("comparison map") {
    const auto params = SystemParams::make(0.5, 1.5);
    CHECK(comparison_map(0.0, params) == doctest::Approx(2.0 / 3.0));
    CHECK(comparison_map(1.0, params) == 0.0);
    CHECK(comparison_map(1.9, params) == doctest::Approx(0.6));
    CHECK_THROWS_AS(rotation_number_numeric(params, 0), PreconditionError);
    CHECK_THROWS_AS(rotation_number_numeric(params, 10, 2.5), PreconditionError);
  }
}
