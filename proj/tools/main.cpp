#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "runner/commands.hpp"
#include "runner/config.hpp"

namespace {

using semiaffine::runner::ConfigError;
using semiaffine::runner::RunConfig;

struct Overrides {
  std::optional<std::string> a, b, target, out, markov;
  std::optional<double> p, gamma, tol, x, y, eps, lo, hi, threshold;
  std::optional<std::uint64_t> n, seed, iters, samples;
  std::optional<std::size_t> grid, bins, max_len, depth;
  std::optional<unsigned> workers;
  bool interleave = false;

  void add_to(CLI::App& app) {
    app.add_option("--a", a, "contraction slope, e.g. 1/2 or 0.5");
    app.add_option("--b", b, "expansion slope, e.g. 5/4");
    app.add_option("--p", p, "probability of symbol 0");
    app.add_option("--markov", markov, "transition table p00,p01,p10,p11 (replaces --p)");
    app.add_option("--gamma", gamma, "breakpoint of the piecewise map");
    app.add_option("--n", n, "depth, step count or sequence length");
    app.add_option("--grid", grid, "grid nodes for the stationary solver");
    app.add_option("--bins", bins, "Ulam bins");
    app.add_option("--seed", seed);
    app.add_option("--workers", workers, "0 = all hardware threads");
    app.add_option("--tol", tol);
    app.add_option("--out", out, "output directory");
    app.add_option("--x", x, "starting point");
    app.add_option("--y", y, "steering target");
    app.add_option("--eps", eps, "steering tolerance");
    app.add_option("--lo", lo, "certificate interval left end");
    app.add_option("--hi", hi, "certificate interval right end");
    app.add_option("--max-len", max_len, "longest word in the coincidence search");
    app.add_option("--iters", iters, "iteration budget");
    app.add_option("--samples", samples, "itinerary windows for the cylinder table");
    app.add_option("--depth", depth, "cylinder depth (0 skips the table)");
    app.add_option("--threshold", threshold, "support threshold in units of 1/bins");
    app.add_option("--target", target, "exp[:cut], dirac:c or uniform:top");
    app.add_flag("--interleave", interleave, "also write the interleaved sequence");
  }

  void apply(RunConfig& c) const {
    if (a) c.a = *a;
    if (b) c.b = *b;
    if (p) {
      c.p = *p;
      c.markov.reset();
    }
    if (markov) {
      semiaffine::Matrix2 m{};
      std::istringstream in(*markov);
      char sep = ',';
      if (!(in >> m[0][0] >> sep >> m[0][1] >> sep >> m[1][0] >> sep >> m[1][1])) {
        throw ConfigError("markov", "expected four comma-separated numbers");
      }
      c.markov = m;
    }
    if (gamma) c.gamma = *gamma;
    if (n) c.n = *n;
    if (grid) c.grid = *grid;
    if (bins) c.bins = *bins;
    if (seed) c.seed = *seed;
    if (workers) c.workers = *workers;
    if (tol) c.tol = *tol;
    if (out) c.out = *out;
    if (x) c.x = *x;
    if (y) c.y = *y;
    if (eps) c.eps = *eps;
    if (lo) c.lo = *lo;
    if (hi) c.hi = *hi;
    if (max_len) c.max_len = *max_len;
    if (iters) c.iters = *iters;
    if (samples) c.samples = *samples;
    if (depth) c.depth = *depth;
    if (threshold) c.threshold = *threshold;
    if (target) c.target = *target;
    if (interleave) c.interleave = true;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and verification tools for the semigroup generated by x -> ax and x -> bx + 1"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path;
  app.add_option("--config", config_path, "JSON config or a previous run.json");
  Overrides overrides;
  overrides.add_to(app);
  for (const auto& name : semiaffine::runner::command_names()) app.add_subcommand(name);

  CLI11_PARSE(app, argc, argv);

  RunConfig config;
  try {
    if (config_path) config = semiaffine::runner::load_config(*config_path);
    overrides.apply(config);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return semiaffine::runner::run_command(command, config, std::cout);
}
