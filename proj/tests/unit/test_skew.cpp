#include <cmath>
#include <limits>

#include "doctest.h"
#include "semiaffine/affine.hpp"
#include "semiaffine/error.hpp"
#include "semiaffine/rng.hpp"
#include "semiaffine/skew.hpp"

using namespace semiaffine;

TEST_SUITE("skew_dynamics") {
  constexpr double kInf = std::numeric_limits<double>::infinity();

  TEST_CASE("orbits") {
    const auto params = SystemParams::make(0.5, 1.5);
    CHECK(path_orbit(Word::from_string("10"), 0.0, params).points == std::vector<double>{0.0, 1.0, 0.5});
    CHECK(path_orbit(Word::repeat(0, 4), 8.0, params).points == std::vector<double>{8.0, 4.0, 2.0, 1.0, 0.5});

    const auto p43 = SystemParams::parse("1/2", "4/3");
    const auto orbit = path_orbit(Word::from_string("00110"), 3.0, p43);
    CHECK(orbit.points.back() == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
    CHECK(orbit.points.back() == doctest::Approx(apply(compose(Word::from_string("00110"), p43), 3.0)).epsilon(1e-15));
  }

  TEST_CASE("overflow is promoted to infinity, which is absorbing") {
    const auto params = SystemParams::make(0.5, 1e10);
    const auto orbit = path_orbit(Word::repeat(1, 40).concat(Word::repeat(0, 5)), 1.0, params);
    REQUIRE(orbit.overflow_step.has_value());
    CHECK(orbit.points[*orbit.overflow_step] == kInf);
    for (std::size_t k = *orbit.overflow_step; k < orbit.points.size(); ++k) CHECK(orbit.points[k] == kInf);
    CHECK(step(0, kInf, params) == kInf);
    CHECK(step(1, kInf, params) == kInf);
  }

  TEST_CASE("compact metric") {
    CHECK(compact_metric(3.0, 3.0) == 0.0);
    CHECK(compact_metric(0.0, kInf) == 1.0);
    CHECK(compact_metric(1.0, 3.0) == 0.25);
  }

  TEST_CASE("path averages") {
    const auto params = SystemParams::make(0.5, 1.25);
    const auto one = path_average(ShiftMeasure::bernoulli(0.6), 7.0, 1, 1, params);
    CHECK(one.size() == 1);
    CHECK(one.cdf(7.0) == 1.0);
    CHECK(one.cdf(6.999) == 0.0);

    const auto long_run = path_average(ShiftMeasure::bernoulli(0.6), 1.0, 1000000, 2, params);
    CHECK(long_run.mean() == doctest::Approx(2.0).epsilon(0.025));
    CHECK(path_points(ShiftMeasure::bernoulli(0.6), 1.0, 1000, 2, params).size() == 1000);
  }

  TEST_CASE("orbits escape when the exponent is positive") {
    const auto params = SystemParams::make(0.5, 3.0);
    const auto mu = path_average(ShiftMeasure::bernoulli(0.5), 1.0, 100000, 3, params);
    CHECK(mu.mass_in(0.0, 100.0) < 0.05);
  }

  TEST_CASE("contraction diagnostics") {
    const auto params = SystemParams::parse("1/2", "3/2");
    const auto same = contraction_diagnostics(2.0, 2.0, Word::from_string("0110"), params);
    for (const auto& row : same.rows) {
      CHECK(row.log_distance == 0.0);
      CHECK(row.compact_distance == 0.0);
    }

    const auto zeros = contraction_diagnostics(1.0, 5.0, Word::repeat(0, 30), params);
    for (const auto& row : zeros.rows) CHECK(row.log_distance == zeros.rows.front().log_distance);
    CHECK(zeros.log_nonincreasing);

    const Word w = ShiftMeasure::bernoulli(0.5).sample_path(200, 21);
    const auto report = contraction_diagnostics(1.0, 5.0, w, params);
    CHECK(report.rows.size() == 201);
    CHECK(report.log_nonincreasing);
    CHECK(report.quarter_bound);
    CHECK(report.rows.back().compact_distance <= 1e-6);

    CHECK_THROWS_AS(contraction_diagnostics(0.0, 1.0, w, params), PreconditionError);
  }

  TEST_CASE("log distance never grows and the quarter bound holds on random pairs") {
    const auto exact = SystemParams::parse("1/3", "7/4");
    CounterRng rng(31);
    for (int t = 0; t < 100; ++t) {
      const double x = std::exp(8.0 * rng.uniform() - 4.0);
      const double y = std::exp(8.0 * rng.uniform() - 4.0);
      const Word w = ShiftMeasure::bernoulli(0.4).sample_path(100, 31, static_cast<std::uint64_t>(t));
      const auto report = contraction_diagnostics(x, y, w, exact);
      CHECK(report.log_nonincreasing);
      CHECK(report.quarter_bound);
    }
  }
}
