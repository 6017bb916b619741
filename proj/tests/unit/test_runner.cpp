#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace semiaffine::runner;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("semiaffine_runner_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  return json::parse(in);
}

}  // namespace

TEST_SUITE("cli_runner") {
  TEST_CASE("config validation") {
    CHECK_THROWS_AS(config_from_json(json{{"bogus", 1}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"p", "high"}}), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::array()), ConfigError);
    CHECK_THROWS_AS(config_from_json(json{{"seed", -1}}), ConfigError);

    RunConfig bad;
    bad.p = 1.5;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad = {};
    bad.gamma = 0.5;
    CHECK_THROWS_AS(validate(bad), ConfigError);
    try {
      bad = {};
      bad.bins = 10;
      validate(bad);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "bins");
    }

    const auto c = config_from_json(json{{"a", "1/3"}, {"p", 0.25}, {"markov", {{0.9, 0.1}, {0.2, 0.8}}}});
    CHECK(c.a == "1/3");
    CHECK(c.p == 0.25);
    REQUIRE(c.markov.has_value());
    CHECK_FALSE(c.shift_measure().is_bernoulli());
    CHECK(config_from_json(to_json(c)).a == "1/3");
  }

  TEST_CASE("stationary run and manifest replay") {
    RunConfig c;
    c.grid = 4097;
    c.workers = 2;
    c.out = scratch("stationary");
    std::ostringstream log;
    REQUIRE(run_command("stationary", c, log) == 0);
    const auto manifest = read_json(c.out / "run.json");
    CHECK(manifest["command"] == "stationary");
    CHECK(manifest["status"] == 0);
    CHECK(read_json(c.out / "stationary.json")["mean"].get<double>() == doctest::Approx(2.0).epsilon(0.005));

    auto replay = config_from_json(manifest);
    replay.out = scratch("stationary_replay");
    replay.workers = 5;
    REQUIRE(run_command("stationary", replay, log) == 0);
    CHECK(slurp(c.out / "stationary.csv") == slurp(replay.out / "stationary.csv"));
  }

  TEST_CASE("coincidence output") {
    RunConfig c;
    c.a = "1/2";
    c.b = "4/3";
    c.max_len = 5;
    c.out = scratch("coincidence");
    std::ostringstream log;
    REQUIRE(run_command("coincidence", c, log) == 0);
    const auto doc = read_json(c.out / "coincidence.json");
    bool found = false;
    for (const auto& cls : doc["classes"]) {
      for (const auto& w : cls["words"]) found = found || w == "00110" || w == "01100";
    }
    CHECK(found);
  }

  TEST_CASE("sequence output is independent of the worker count") {
    std::ostringstream log;
    RunConfig c;
    c.n = 300;
    c.out = scratch("seq1");
    c.workers = 1;
    REQUIRE(run_command("approx-seq", c, log) == 0);
    RunConfig d = c;
    d.out = scratch("seq4");
    d.workers = 4;
    REQUIRE(run_command("approx-seq", d, log) == 0);
    CHECK(slurp(c.out / "sequence.txt") == slurp(d.out / "sequence.txt"));
    CHECK(slurp(c.out / "sequence.json") == slurp(d.out / "sequence.json"));
  }

  TEST_CASE("invalid parameters fail with status 2") {
    RunConfig c;
    c.p = 0.0;
    c.out = scratch("bad");
    std::ostringstream log;
    CHECK(run_command("stationary", c, log) == 2);
  }
}
