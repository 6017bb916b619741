#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "semiaffine/export.hpp"
#include "semiaffine/stationary.hpp"

using namespace semiaffine;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("semiaffine_export_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> lines(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("export") {
  TEST_CASE("17 significant digits round-trip") {
    for (double v : {0.1, 1.0 / 3.0, 2.0 / 3.0, 1e-300, 123456789.123456789, 0.0, -5.5}) {
      CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  }

  TEST_CASE("grid csv and sidecar") {
    const auto dir = scratch("grid");
    const auto params = SystemParams::parse("1/2", "5/4");
    const auto sol = solve_stationary(0.6, params, {.grid = 257, .tol = 1e-8});
    write_grid_csv(dir / "g.csv", sol.measure);
    write_grid_sidecar(dir / "g.json", sol.measure, {0.5, 1.25, 0.6, 1e-8, sol.residual, sol.iterations});

    const auto rows = lines(dir / "g.csv");
    REQUIRE(rows.size() == 258);
    CHECK(rows[0] == "u,x,cdf");
    CHECK(rows[1].rfind("1,0,", 0) == 0);
    CHECK(rows[257].rfind("0,inf,", 0) == 0);

    std::ifstream in(dir / "g.json");
    const auto doc = nlohmann::json::parse(in);
    for (const char* key : {"a", "b", "p", "N", "tol", "residual", "mass_at_infinity", "mean", "second_moment",
                            "iterations"}) {
      CHECK(doc.contains(key));
    }
    CHECK(doc["N"] == 257);
    CHECK(doc["mean"].get<double>() == doctest::Approx(sol.measure.mean()));
  }

  TEST_CASE("infinite moments are written as strings") {
    const auto dir = scratch("inf");
    const GridMeasure mu(std::vector<double>{0.0, 0.5, 0.5});
    write_grid_sidecar(dir / "g.json", mu, {0.5, 1.5, 0.5, 1e-6, 0.0, 0});
    std::ifstream in(dir / "g.json");
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["mass_at_infinity"].get<double>() == 0.5);
    CHECK(doc["mean"] == "inf");
  }

  TEST_CASE("point masses, densities, sequences") {
    const auto dir = scratch("misc");
    const std::vector<double> pts{2.0, 0.0, 1.0};
    write_point_mass_csv(dir / "p.csv", PointMassMeasure::empirical(pts));
    const auto rows = lines(dir / "p.csv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "u,x,weight");
    CHECK(rows[1].rfind("1,0,", 0) == 0);
    CHECK(rows[3].rfind("0.33333333333333331,2,", 0) == 0);

    UlamDensity density;
    density.lo = 0.0;
    density.hi = 1.0;
    density.mass = {0.25, 0.75};
    write_density_csv(dir / "d.csv", density);
    CHECK(lines(dir / "d.csv") == std::vector<std::string>{"bin_left,bin_right,mass", "0,0.5,0.25", "0.5,1,0.75"});

    std::vector<ApproxElement> seq(2);
    seq[0].word = Word::from_string("01");
    write_sequence(dir / "s.txt", dir / "s.json", seq);
    CHECK(lines(dir / "s.txt") == std::vector<std::string>{"01", ""});
    std::ifstream in(dir / "s.json");
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["count"] == 2);
    CHECK(doc["elements"][0]["length"] == 2);
  }
}
