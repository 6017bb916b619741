#include <cmath>

#include "doctest.h"
#include "semiaffine/error.hpp"
#include "semiaffine/rng.hpp"
#include "semiaffine/skew.hpp"
#include "semiaffine/stationary.hpp"

using namespace semiaffine;

TEST_SUITE("stationary_solver") {
  const SystemParams params = SystemParams::make(0.5, 1.25);

  TEST_CASE("pushforward of a point mass") {
    // 156 cells put 1, a = 1/2 and b + 1 = 9/4 on nodes (u = 1/2, 2/3, 4/13).
    const auto mu = GridMeasure::dirac(1.0, 157);
    const auto image = tp_pushforward(mu, 0.6, params, 2);
    const auto cdf = image.cdf_values();
    for (std::size_t j = 0; j < image.nodes(); ++j) {
      const double x = image.x_at(j);
      // Just below each jump the preimage falls inside the cell holding the
      // source atom, where the grid interpolates.
      if ((x > 0.45 && x < 0.5) || (x > 2.1 && x < 2.25)) continue;
      const double expected = x < 0.5 - 1e-12 ? 0.0 : x < 2.25 - 1e-12 ? 0.6 : 1.0;
      CHECK(cdf[j] == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  TEST_CASE("pushforward of the uniform law on [0, 1]") {
    const auto uniform = GridMeasure::from_cdf([](double x) { return std::clamp(x, 0.0, 1.0); }, 1 << 14);
    const auto image = tp_pushforward(uniform, 0.6, params);
    CHECK(image.cdf(0.5) == doctest::Approx(0.6).epsilon(1e-4));
    // Closed form on [1, 2.25]: 0.6 + 0.4 (x - 1) / 1.25.
    CHECK(image.cdf(1.5) == doctest::Approx(0.6 + 0.4 * 0.5 / 1.25).epsilon(1e-3));
  }

  TEST_CASE("solver reaches the moment oracle") {
    const auto sol = solve_stationary(0.6, params);
    CHECK(sol.residual <= 1e-6);
    CHECK(std::abs(sol.measure.moment(1) - 2.0) <= 0.01);
    CHECK(std::abs(sol.measure.moment(2) - 32.0 / 3.0) <= 0.1);
    CHECK(sol.measure.mass_at_infinity() == doctest::Approx(0.0).epsilon(1e-9));

    // A fixed point maps to itself within the tolerance.
    CHECK(kolmogorov_distance(sol.measure, tp_pushforward(sol.measure, 0.6, params)) <= 1e-6);
  }

  TEST_CASE("solver mean agrees with a long path average") {
    const auto sol = solve_stationary(0.6, params);
    const auto path = path_average(ShiftMeasure::bernoulli(0.6), 1.0, 2000000, 8, params);
    CHECK(path.mean() == doctest::Approx(sol.measure.moment(1)).epsilon(0.01));
  }

  TEST_CASE("positive exponent is refused") {
    CHECK_THROWS_AS(solve_stationary(0.5, SystemParams::make(0.5, 3.0)), LyapunovSignError);
    try {
      solve_stationary(0.5, SystemParams::make(0.5, 3.0));
    } catch (const LyapunovSignError& e) {
      CHECK(e.exponent() == doctest::Approx(0.5 * std::log(1.5)));
    }
  }

  TEST_CASE("iteration budget") {
    StationaryOptions tight;
    tight.max_iters = 2;
    tight.grid = 1024;
    CHECK_THROWS_AS(solve_stationary(0.6, params, tight), ConvergenceError);
  }

  TEST_CASE("moment oracle") {
    CHECK(moment_oracle(0.6, params, 1) == doctest::Approx(2.0));
    CHECK(moment_oracle(0.6, params, 2) == doctest::Approx(32.0 / 3.0));
    CHECK_THROWS_AS(moment_oracle(0.5, SystemParams::make(0.5, 1.5), 1), PreconditionError);
    CHECK_THROWS_AS(moment_oracle(0.6, params, 3), PreconditionError);
  }

  TEST_CASE("quantile map") {
    StationaryOptions opts;
    opts.grid = 1 << 12;
    const auto mu = solve_stationary(0.6, params, opts).measure;
    CHECK(quantile_map(mu, 0.0) == 0.0);

    double previous = -1.0;
    for (int i = 1; i < 1000; ++i) {
      const double h = quantile_map(mu, i / 1000.0);
      CHECK(h > previous);
      previous = h;
    }

    // Stratified uniforms through H land within two cells of mu.
    const std::size_t n = 100000;
    std::vector<double> samples(n);
    for (std::size_t i = 0; i < n; ++i) samples[i] = quantile_map(mu, (static_cast<double>(i) + 0.5) / n);
    double widest = 0.0;
    const auto cdf = mu.cdf_values();
    for (std::size_t j = 0; j + 2 < cdf.size(); ++j) widest = std::max(widest, cdf[j + 2] - cdf[j]);
    CHECK(kolmogorov_distance(PointMassMeasure::empirical(samples), mu) <= widest + 1.0 / n);

    // Plain uniforms: within the DKW band at level 1e-6 as well.
    CounterRng rng(5);
    for (auto& s : samples) s = quantile_map(mu, rng.uniform());
    const double dkw = std::sqrt(std::log(2.0 / 1e-6) / (2.0 * n));
    CHECK(kolmogorov_distance(PointMassMeasure::empirical(samples), mu) <= widest + dkw);
  }
}
