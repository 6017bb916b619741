#include <atomic>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "semiaffine/parallel.hpp"
#include "semiaffine/rng.hpp"

using namespace semiaffine;

TEST_SUITE("parallel_rng") {
  TEST_CASE("counter generator is a pure function of (seed, stream, counter)") {
    CounterRng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
    for (int i = 0; i < 10; ++i) {
      const auto va = a();
      CHECK(va == b());
      CHECK(va != c());
      CHECK(va != d());
    }
    CHECK(CounterRng(42, 3).at(7) == a.at(7));
    CHECK(a.counter() == 10);
  }

  TEST_CASE("uniform and exponential moments") {
    CounterRng rng(1);
    const int n = 200000;
    double su = 0.0, se = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = rng.uniform();
      CHECK_FALSE((u < 0.0 || u >= 1.0));
      su += u;
      se += rng.exponential(2.0);
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(se / n == doctest::Approx(0.5).epsilon(0.01));
  }

  TEST_CASE("parallel_for visits each index once") {
    for (unsigned workers : {1u, 2u, 7u, 0u}) {
      std::vector<std::atomic<int>> hits(1000);
      parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i]++; });
      for (auto& h : hits) CHECK(h.load() == 1);
    }
    parallel_for(0, 4, [](std::size_t) { FAIL("no indices expected"); });
    CHECK(resolve_workers(3) == 3);
    CHECK(resolve_workers(0) >= 1);
  }

  TEST_CASE("exceptions propagate") {
    CHECK_THROWS_AS(parallel_for(100, 4,
                                 [](std::size_t i) {
                                   if (i == 57) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
  }
}
