#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "semiaffine/error.hpp"
#include "semiaffine/measures.hpp"
#include "semiaffine/rng.hpp"

using namespace semiaffine;

TEST_SUITE("measures") {
  constexpr double kInf = std::numeric_limits<double>::infinity();

  TEST_CASE("compact coordinate") {
    CHECK(to_compact(0.0) == 1.0);
    CHECK(to_compact(kInf) == 0.0);
    CHECK(from_compact(0.0) == kInf);
    CHECK(from_compact(0.25) == 3.0);
  }

  TEST_CASE("point masses") {
    const std::vector<double> pts{3.0, 1.0, kInf, 1.0};
    const std::vector<double> w{0.25, 0.25, 0.25, 0.25};
    const auto mu = PointMassMeasure::from_points(pts, w);
    CHECK(mu.cdf(0.5) == 0.0);
    CHECK(mu.cdf(1.0) == 0.5);
    CHECK(mu.cdf(1e300) == 0.75);
    CHECK(mu.mass_in(1.0, 3.0) == 0.75);
    CHECK(mu.mass_in(1.5, 2.0) == 0.0);
    CHECK(mu.moment(1) == kInf);
    CHECK(mu.total_mass() == 1.0);

    const std::vector<double> bad{0.5, 0.6};
    CHECK_THROWS_AS(PointMassMeasure::from_points(std::vector<double>{1.0, 2.0}, bad), PreconditionError);
    CHECK_THROWS_AS(PointMassMeasure::from_points(std::vector<double>{-1.0}, std::vector<double>{1.0}),
                    PreconditionError);
  }

  TEST_CASE("Kolmogorov distance basics") {
    const auto a = PointMassMeasure::dirac(2.0);
    CHECK(kolmogorov_distance(a, a) == 0.0);
    CHECK(kolmogorov_distance(PointMassMeasure::dirac(0.0), PointMassMeasure::dirac(kInf)) == 1.0);
    const auto g = GridMeasure::dirac(2.0, 1025);
    CHECK(kolmogorov_distance(g, g) == 0.0);
    CHECK(kolmogorov_distance(GridMeasure::dirac(0.0, 65), GridMeasure::dirac(kInf, 65)) == 1.0);
  }

  TEST_CASE("Kolmogorov distance agrees with brute force") {
    CounterRng rng(41);
    for (int t = 0; t < 50; ++t) {
      oracle::Atoms lhs, rhs;
      const int n = 1 + static_cast<int>(rng() % 30), m = 1 + static_cast<int>(rng() % 30);
      for (int i = 0; i < n; ++i) {
        lhs.points.push_back(std::floor(10.0 * rng.uniform()));  // ties on purpose
        lhs.weights.push_back(1.0 / n);
      }
      for (int i = 0; i < m; ++i) {
        rhs.points.push_back(std::floor(10.0 * rng.uniform()));
        rhs.weights.push_back(1.0 / m);
      }
      const auto a = PointMassMeasure::from_points(lhs.points, lhs.weights);
      const auto b = PointMassMeasure::from_points(rhs.points, rhs.weights);
      CHECK(kolmogorov_distance(a, b) == doctest::Approx(oracle::ks_brute(lhs, rhs)).epsilon(1e-12));

      const std::function<double(double)> exp_cdf = [](double x) { return x <= 0 ? 0.0 : -std::expm1(-x / 4.0); };
      CHECK(kolmogorov_distance(a, exp_cdf) == doctest::Approx(oracle::ks_brute(lhs, exp_cdf)).epsilon(1e-12));
    }
  }

  TEST_CASE("point masses against a grid") {
    // The grid measure of the exponential CDF is linear in u between nodes, so
    // the sup against atoms is attained at atoms or nodes; sample densely.
    const std::function<double(double)> exp_cdf = [](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); };
    const auto grid = GridMeasure::from_cdf(exp_cdf, 4097);
    CounterRng rng(43);
    oracle::Atoms atoms;
    for (int i = 0; i < 40; ++i) {
      atoms.points.push_back(-std::log1p(-rng.uniform()));
      atoms.weights.push_back(1.0 / 40);
    }
    const auto pm = PointMassMeasure::from_points(atoms.points, atoms.weights);
    const std::function<double(double)> grid_cdf = [&](double x) { return grid.cdf(x); };
    const double expected = oracle::ks_brute(atoms, grid_cdf);
    CHECK(kolmogorov_distance(pm, grid) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(kolmogorov_distance(grid, pm) == kolmogorov_distance(pm, grid));
    CHECK(std::abs(kolmogorov_distance(pm, grid) - kolmogorov_distance(pm, exp_cdf)) < 1e-3);
  }

  TEST_CASE("grid measures") {
    const auto g = GridMeasure::dirac(1.0, 5);  // nodes at u = 1, .75, .5, .25, 0
    CHECK(g.nodes() == 5);
    CHECK(g.x_at(0) == 0.0);
    CHECK(g.x_at(2) == 1.0);
    CHECK(g.x_at(4) == kInf);
    CHECK(g.cdf(1.0) == 1.0);
    CHECK(g.cdf(0.0) == 0.0);
    CHECK(g.mass_at_infinity() == 0.0);

    CHECK_THROWS_AS(GridMeasure(std::vector<double>{0.0, 0.5, 0.4}), PreconditionError);
    CHECK_THROWS_AS(GridMeasure(std::vector<double>{0.0, 1.2}), PreconditionError);

    const auto escaping = GridMeasure(std::vector<double>{0.0, 0.25, 0.5});
    CHECK(escaping.mass_at_infinity() == 0.5);
    CHECK(escaping.moment(1) == kInf);
  }

  TEST_CASE("grid moments of a known law") {
    const std::function<double(double)> exp_cdf = [](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); };
    const auto g = GridMeasure::from_cdf(exp_cdf, 1 << 16);
    CHECK(g.moment(1) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(g.moment(2) == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(g.mass_in(0.0, 1.0) == doctest::Approx(-std::expm1(-1.0)).epsilon(1e-6));
  }
}
