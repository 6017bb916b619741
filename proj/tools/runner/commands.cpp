#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>

#include "acceptance.hpp"
#include "json.hpp"
#include "semiaffine/acim.hpp"
#include "semiaffine/affine.hpp"
#include "semiaffine/error.hpp"
#include "semiaffine/export.hpp"
#include "semiaffine/holder.hpp"
#include "semiaffine/parallel.hpp"
#include "semiaffine/rotation.hpp"
#include "semiaffine/skew.hpp"
#include "semiaffine/sphere.hpp"
#include "semiaffine/stationary.hpp"
#include "semiaffine/steering.hpp"

#ifndef SEMIAFFINE_VERSION
#define SEMIAFFINE_VERSION "unknown"
#endif

namespace semiaffine::runner {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Outcome {
  json results = json::object();
  std::vector<std::string> outputs;
  bool ok = true;
};

// JSON has no infinities.
json number(double value) {
  if (std::isfinite(value)) return value;
  return std::isnan(value) ? json("nan") : json(value > 0 ? "inf" : "-inf");
}

struct Target {
  std::function<double(CounterRng&)> sample;
  std::function<double(double)> cdf;  // continuous targets only
  std::optional<double> atom;
};

Target parse_target(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto value = [&](double fallback) {
    if (arg.empty()) return fallback;
    try {
      return std::stod(arg);
    } catch (const std::exception&) {
      throw ConfigError("target", "cannot read the number in \"" + spec + "\"");
    }
  };
  if (kind == "exp") {
    const double cut = value(std::numeric_limits<double>::infinity());
    if (!(cut > 0.0)) throw ConfigError("target", "truncation point must be positive");
    const double tail = std::isinf(cut) ? -1.0 : std::expm1(-cut);
    return {[tail](CounterRng& rng) { return -std::log1p(rng.uniform() * tail); },
            [cut, tail](double x) { return x <= 0.0 ? 0.0 : x >= cut ? 1.0 : std::expm1(-x) / tail; },
            std::nullopt};
  }
  if (kind == "dirac") {
    const double c = value(1.0);
    if (!(c >= 0.0) || !std::isfinite(c)) throw ConfigError("target", "point must be finite and >= 0");
    return {[c](CounterRng&) { return c; }, nullptr, c};
  }
  if (kind == "uniform") {
    const double top = value(1.0);
    if (!(top > 0.0) || !std::isfinite(top)) throw ConfigError("target", "upper end must be finite and positive");
    return {[top](CounterRng& rng) { return top * rng.uniform(); },
            [top](double x) { return std::clamp(x / top, 0.0, 1.0); }, std::nullopt};
  }
  throw ConfigError("target", "expected exp[:cut], dirac:c or uniform:top, got \"" + spec + "\"");
}

double target_distance(const Target& target, const PointMassMeasure& empirical) {
  if (target.atom) return kolmogorov_distance(empirical, PointMassMeasure::dirac(*target.atom));
  return kolmogorov_distance(empirical, target.cdf);
}

ShiftMeasure bernoulli_only(const RunConfig& c, const char* command) {
  if (c.markov) throw ConfigError("markov", std::string(command) + " is driven by a Bernoulli measure only");
  return ShiftMeasure::bernoulli(c.p);
}

Outcome cmd_stationary(const RunConfig& c, std::ostream& log) {
  bernoulli_only(c, "stationary");
  const SystemParams params = c.params();
  StationaryOptions so;
  so.grid = c.grid;
  so.tol = c.tol;
  so.max_iters = c.iters.value_or(10000);
  so.workers = c.workers;
  const auto sol = solve_stationary(c.p, params, so);

  Outcome o;
  write_grid_csv(c.out / "stationary.csv", sol.measure);
  write_grid_sidecar(c.out / "stationary.json", sol.measure,
                     GridSidecar{params.a, params.b, c.p, c.tol, sol.residual, sol.iterations});
  o.outputs = {"stationary.csv", "stationary.json"};
  o.results = {{"residual", sol.residual},
               {"iterations", sol.iterations},
               {"mean", number(sol.measure.moment(1))},
               {"second_moment", number(sol.measure.moment(2))}};
  for (int order : {1, 2}) {
    try {
      o.results[order == 1 ? "oracle_mean" : "oracle_second_moment"] = moment_oracle(c.p, params, order);
    } catch (const PreconditionError&) {
      o.results[order == 1 ? "oracle_mean" : "oracle_second_moment"] = "inf";
    }
  }
  log << "stationary: residual " << format_double(sol.residual) << " after " << sol.iterations
      << " iterations, mean " << format_double(sol.measure.moment(1)) << '\n';
  return o;
}

Outcome cmd_sphere(const RunConfig& c, std::ostream& log) {
  const SystemParams params = c.params();
  const ShiftMeasure nu = c.shift_measure();
  const std::size_t n = c.n.value_or(20);
  SphereOptions so;
  so.workers = c.workers;
  const auto mu = sphere_measure(nu, c.x, n, params, so);

  Outcome o;
  write_point_mass_csv(c.out / "sphere.csv", mu);
  o.outputs = {"sphere.csv"};
  o.results = {{"n", n},
               {"x", c.x},
               {"atoms", mu.size()},
               {"total_mass", mu.total_mass()},
               {"mean", number(mu.moment(1))},
               {"second_moment", number(mu.moment(2))},
               {"lyapunov", lyapunov(nu, params)}};
  if (nu.is_bernoulli() && n < so.depth_cap) o.results["refinement_residual"] = refinement_check(nu, c.x, n, params, so);
  log << "sphere-avg: " << mu.size() << " atoms, mean " << format_double(mu.moment(1)) << '\n';
  return o;
}

Outcome cmd_path(const RunConfig& c, std::ostream& log) {
  const SystemParams params = c.params();
  const ShiftMeasure nu = c.shift_measure();
  const std::size_t n = c.n.value_or(1000000);
  if (n == 0) throw ConfigError("n", "path average needs at least one step");
  const auto points = path_points(nu, c.x, n, c.seed, params);
  const auto mu = PointMassMeasure::empirical(points);
  const auto escaped = std::count_if(points.begin(), points.end(), [](double x) { return std::isinf(x); });

  Outcome o;
  write_point_mass_csv(c.out / "path.csv", mu);
  o.outputs = {"path.csv"};
  o.results = {{"n", n},
               {"x", c.x},
               {"mean", number(mu.moment(1))},
               {"mass_0_100", mu.mass_in(0.0, 100.0)},
               {"points_at_infinity", escaped},
               {"lyapunov", lyapunov(nu, params)}};
  log << "path-avg: mean " << format_double(mu.moment(1)) << ", mass on [0,100] "
      << format_double(mu.mass_in(0.0, 100.0)) << '\n';
  return o;
}

Outcome cmd_acim(const RunConfig& c, std::ostream& log) {
  const SystemParams params = c.params();
  const AcimSystem sys(params, c.gamma);
  UlamOptions uo;
  uo.workers = c.workers;
  uo.max_iters = c.iters.value_or(uo.max_iters);
  const auto density = ulam_density(sys, c.bins, uo);
  const auto support = support_intervals(density, c.threshold);

  Outcome o;
  write_density_csv(c.out / "density.csv", density);
  write_support_json(c.out / "support.json", support, c.gamma);
  o.outputs = {"density.csv", "support.json"};
  o.results = {{"residual", density.residual},
               {"iterations", density.iterations},
               {"interval", {sys.lo(), sys.hi()}},
               {"hull", {support.hull.first, support.hull.second}},
               {"support_intervals", support.intervals.size()}};

  if (c.depth > 0) {
    CylinderOptions co;
    co.workers = c.workers;
    const auto table = nu_gamma_cylinders(sys, density, c.depth, c.samples, c.seed, co);
    {
      std::ofstream out(c.out / "cylinders.csv", std::ios::binary);
      out << "word,mass\n";
      for (std::uint64_t i = 0; i < table.mass.size(); ++i) {
        out << Word::from_index(table.depth, i).to_string() << ',' << format_double(table.mass[i]) << '\n';
      }
    }
    o.outputs.push_back("cylinders.csv");
    const std::size_t n = std::min<std::size_t>(c.n.value_or(c.depth), std::min<std::size_t>(c.depth, 10));
    o.results["cylinder_depth"] = c.depth;
    o.results["cylinder_lyapunov"] = table.lyapunov(params);
    o.results["round_trip_n"] = n;
    o.results["round_trip_distance"] = cylinder_roundtrip(sys, density, table, c.x, n);
  }
  log << "acim: residual " << format_double(density.residual) << ", hull [" << format_double(support.hull.first)
      << ", " << format_double(support.hull.second) << "]\n";
  return o;
}

Outcome cmd_steer(const RunConfig& c, std::ostream& log) {
  if (!c.y) throw ConfigError("y", "steer needs a target --y");
  const double eps = c.eps.value_or(0.1);
  const auto result = steer(c.x, *c.y, eps, c.params());
  Outcome o;
  o.results = {{"x", c.x},
               {"y", *c.y},
               {"eps", eps},
               {"word", result.word.to_string()},
               {"length", result.word.size()},
               {"leading_zeros", result.leading_zeros},
               {"image", result.image},
               {"error", result.error},
               {"slope", result.slope},
               {"orbit_min", result.orbit_min},
               {"orbit_max", result.orbit_max}};
  {
    std::ofstream out(c.out / "steer.json", std::ios::binary);
    out << o.results.dump(2) << '\n';
  }
  o.outputs = {"steer.json"};
  o.ok = result.error < eps;
  log << "steer: |T_w(x) - y| = " << format_double(result.error) << " with a word of length " << result.word.size()
      << '\n';
  return o;
}

Outcome cmd_approx(const RunConfig& c, std::ostream& log) {
  const SystemParams params = c.params();
  const Target target = parse_target(c.target);
  const std::size_t count = c.n.value_or(2000);
  if (count == 0) throw ConfigError("n", "sequence length must be positive");
  const auto seq = approx_sequence(target.sample, count, params, c.seed, c.workers);

  Outcome o;
  write_sequence(c.out / "sequence.txt", c.out / "sequence.json", seq);
  o.outputs = {"sequence.txt", "sequence.json"};
  std::vector<double> images;
  std::vector<Word> words;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double limit = 1.0 / static_cast<double>(i + 1);
    o.ok = o.ok && seq[i].error < limit && seq[i].slope < limit;
    images.push_back(seq[i].image);
    words.push_back(seq[i].word);
  }
  o.results = {{"count", count},
               {"target", c.target},
               {"distance_to_target", target_distance(target, PointMassMeasure::empirical(images))}};

  if (c.interleave) {
    const InterleavedSequence interleaved(words);
    const auto length = std::min<std::uint64_t>(count, interleaved.available());
    std::vector<double> mixed;
    std::ofstream out(c.out / "interleaved.txt", std::ios::binary);
    for (const Word& w : interleaved.take(length)) {
      out << w.to_string() << '\n';
      mixed.push_back(compose(w, params)(1.0));
    }
    o.outputs.push_back("interleaved.txt");
    o.results["interleaved_length"] = length;
    o.results["interleaved_distance_to_target"] = target_distance(target, PointMassMeasure::empirical(mixed));
  }
  log << "approx-seq: " << count << " words, distance to target "
      << format_double(o.results["distance_to_target"].get<double>()) << '\n';
  return o;
}

Outcome cmd_coincidence(const RunConfig& c, std::ostream& log) {
  const SystemParams params = c.params();
  const auto classes = coincidence_search(c.max_len, params, c.workers);
  Outcome o;
  write_coincidence_json(c.out / "coincidence.json", classes, c.max_len, params);
  o.outputs = {"coincidence.json"};
  o.results = {{"max_len", c.max_len}, {"classes", classes.size()}};
  log << "coincidence: " << classes.size() << " class(es) up to length " << c.max_len << '\n';
  for (const auto& cls : classes) {
    log << "  (" << cls.map.slope.get_str() << ", " << cls.map.intercept.get_str() << "):";
    for (const auto& w : cls.words) log << ' ' << w.to_string();
    log << '\n';
  }
  return o;
}

Outcome cmd_holder(const RunConfig& c, std::ostream& log) {
  if (!c.lo || !c.hi) throw ConfigError(c.lo ? "hi" : "lo", "holder-cert needs both --lo and --hi");
  bernoulli_only(c, "holder-cert");
  const auto cert = holder_certificate(*c.lo, *c.hi, c.p, c.params());
  Outcome o;
  write_certificate_json(c.out / "certificate.json", cert);
  o.outputs = {"certificate.json"};
  o.results = {{"k", cert.k},
               {"m", cert.m},
               {"inclusion_verified", cert.inclusion_verified},
               {"length_bound_holds", cert.length_bound_holds}};
  o.ok = cert.inclusion_verified && cert.length_bound_holds;
  log << "holder-cert: word " << cert.word.to_string() << " (k=" << cert.k << ", m=" << cert.m << ")\n";
  return o;
}

Outcome cmd_rotation(const RunConfig& c, std::ostream& log) {
  const SystemParams params = c.params();
  const std::size_t iters = c.iters.value_or(1000000);
  const double formula = rotation_number(params);
  const double numeric = rotation_number_numeric(params, iters);
  Outcome o;
  o.results = {{"formula", formula}, {"numeric", numeric}, {"iterations", iters}, {"gap", std::abs(formula - numeric)}};
  {
    std::ofstream out(c.out / "rotation.json", std::ios::binary);
    out << o.results.dump(2) << '\n';
  }
  o.outputs = {"rotation.json"};
  log << "rotation: formula " << format_double(formula) << ", numeric " << format_double(numeric) << '\n';
  return o;
}

Outcome cmd_verify(const RunConfig& c, std::ostream& log) {
  AcceptanceOptions ao;
  ao.seed = c.seed;
  ao.workers = c.workers;
  ao.scratch = c.out / "determinism";
  const auto results = run_acceptance(ao, [&](const CriterionResult& r) { log << format_line(r) << std::endl; });
  write_verify_csv(c.out / "verify.csv", results);

  Outcome o;
  o.outputs = {"verify.csv", "determinism"};
  json table = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.passed;
    table.push_back({{"id", r.id},
                     {"name", r.name},
                     {"passed", r.passed},
                     {"metric", r.metric},
                     {"detail", r.detail},
                     {"seconds", r.seconds}});
  }
  o.results = {{"criteria", table}, {"passed", passed}, {"total", results.size()}};
  o.ok = passed == results.size();
  log << passed << "/" << results.size() << " criteria passed\n";
  return o;
}

}  // namespace

int run_command(const std::string& name, const RunConfig& config, std::ostream& log) {
  static const std::map<std::string, Outcome (*)(const RunConfig&, std::ostream&)> kCommands = {
      {"stationary", cmd_stationary}, {"sphere-avg", cmd_sphere},        {"path-avg", cmd_path},
      {"acim", cmd_acim},             {"steer", cmd_steer},              {"approx-seq", cmd_approx},
      {"coincidence", cmd_coincidence}, {"holder-cert", cmd_holder},     {"rotation", cmd_rotation},
      {"verify", cmd_verify}};
  const auto it = kCommands.find(name);
  if (it == kCommands.end()) {
    log << "unknown subcommand '" << name << "'\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  std::string error;
  int status = 0;
  try {
    validate(config);
    fs::create_directories(config.out);
    outcome = it->second(config, log);
    status = outcome.ok ? 0 : 1;
  } catch (const ConfigError& e) {
    log << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    error = e.what();
    log << "error: " << error << '\n';
    status = 1;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json manifest = {{"command", name},
                   {"config", to_json(config)},
                   {"seed", config.seed},
                   {"workers_resolved", resolve_workers(config.workers)},
                   {"versions", {{"semiaffine", SEMIAFFINE_VERSION}, {"compiler", __VERSION__}}},
                   {"wall_time_s", wall},
                   {"outputs", outcome.outputs},
                   {"results", outcome.results},
                   {"status", status}};
  if (!error.empty()) manifest["error"] = error;
  std::ofstream out(config.out / "run.json", std::ios::binary | std::ios::trunc);
  out << manifest.dump(2) << '\n';
  return status;
}

}  // namespace semiaffine::runner
