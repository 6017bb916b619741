#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>
#include <sstream>

#include "semiaffine/acim.hpp"
#include "semiaffine/affine.hpp"
#include "semiaffine/error.hpp"
#include "semiaffine/export.hpp"
#include "semiaffine/holder.hpp"
#include "semiaffine/rng.hpp"
#include "semiaffine/rotation.hpp"
#include "semiaffine/shift_measure.hpp"
#include "semiaffine/skew.hpp"
#include "semiaffine/sphere.hpp"
#include "semiaffine/stationary.hpp"
#include "semiaffine/steering.hpp"

namespace semiaffine::runner {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

CriterionResult criterion(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

std::string num(double value) { return format_double(value); }

SystemParams rational(const char* a, const char* b) { return SystemParams::parse(a, b); }

const Matrix2 kMarkovExample{{{0.9, 0.1}, {0.2, 0.8}}};

// Streams reserved per criterion so that criteria never share random numbers.
enum Stream : std::uint64_t {
  kStreamPath = 1u << 20,
  kStreamMarkovPath,
  kStreamEscape,
  kStreamContraction,
  kStreamHolder,
  kStreamCylinders,
  kStreamTargets,
};

double truncated_exp_cdf(double x) {
  constexpr double kCut = 20.0;
  if (x <= 0.0) return 0.0;
  if (x >= kCut) return 1.0;
  return -std::expm1(-x) / -std::expm1(-kCut);
}

double truncated_exp_sample(CounterRng& rng) {
  constexpr double kCut = 20.0;
  return -std::log1p(rng.uniform() * std::expm1(-kCut));
}

CriterionResult coincidence(const AcceptanceOptions& opt) {
  CriterionResult r = criterion(1, "exact coincidence search");
  const auto start = Clock::now();
  const SystemParams p43 = rational("1/2", "4/3");
  const auto classes = coincidence_search(5, p43, opt.workers);
  const auto none = coincidence_search(8, rational("1/2", "3/2"), opt.workers);
  r.seconds = seconds_since(start);

  bool one_class = classes.size() == 1;
  if (one_class) {
    const auto& cls = classes.front();
    one_class = cls.words == std::vector<Word>{Word::from_string("00110"), Word::from_string("10001")} &&
                cls.map.slope == mpq_class(2, 9) && cls.map.intercept == mpq_class(7, 6);
  }
  const ExactAffineMap other = compose_exact(Word::from_string("01100"), p43);
  r.passed = one_class && none.empty() && r.seconds < 1.0;
  r.metric = "classes_len5=" + std::to_string(classes.size()) + " classes_len8=" + std::to_string(none.size());
  r.detail = "T_01100 = (" + other.slope.get_str() + ", " + other.intercept.get_str() + "); " +
             std::to_string(r.seconds) + " s";
  return r;
}

CriterionResult stationary_moments(const AcceptanceOptions& opt) {
  CriterionResult r = criterion(2, "stationary moments");
  const auto start = Clock::now();
  const SystemParams params = rational("1/2", "5/4");
  StationaryOptions so;
  so.workers = opt.workers;
  const auto sol = solve_stationary(0.6, params, so);
  r.seconds = seconds_since(start);
  const double mean = sol.measure.moment(1);
  const double second = sol.measure.moment(2);
  r.passed = std::abs(mean - 2.0) <= 0.01 && std::abs(second - 32.0 / 3.0) <= 0.1 && sol.residual <= 1e-6 &&
             r.seconds < 30.0;
  r.metric = "mean=" + num(mean) + " second=" + num(second) + " residual=" + num(sol.residual);
  r.detail = "oracle mean " + num(moment_oracle(0.6, params, 1)) + ", oracle second " +
             num(moment_oracle(0.6, params, 2)) + ", " + std::to_string(sol.iterations) + " iterations";
  return r;
}

CriterionResult sphere_vs_path(const AcceptanceOptions& opt) {
  CriterionResult r = criterion(3, "sphere average matches path average");
  const auto start = Clock::now();
  const SystemParams params = rational("1/2", "5/4");
  SphereOptions so;
  so.workers = opt.workers;

  const ShiftMeasure bern = ShiftMeasure::bernoulli(0.6);
  const auto sphere_b = sphere_measure(bern, 1.0, 20, params, so);
  const auto path_b = path_average(bern, 1.0, 1000000, opt.seed ^ kStreamPath, params);
  const double d_bern = kolmogorov_distance(sphere_b, path_b);

  const ShiftMeasure markov = ShiftMeasure::markov(kMarkovExample);
  const auto sphere_m = sphere_measure(markov, 1.0, 20, params, so);
  const auto path_m = path_average(markov, 1.0, 1000000, opt.seed ^ kStreamMarkovPath, params);
  const double d_markov = kolmogorov_distance(sphere_m, path_m);
  r.seconds = seconds_since(start);

  r.passed = d_bern <= 0.02 && d_markov <= 0.05 && r.seconds < 60.0;
  r.metric = "bernoulli=" + num(d_bern) + " markov=" + num(d_markov);
  r.detail = "sphere mean " + num(sphere_b.mean()) + ", path mean " + num(path_b.mean());
  return r;
}

CriterionResult start_independence(const AcceptanceOptions& opt) {
  CriterionResult r = criterion(4, "start-point independence");
  const auto start = Clock::now();
  const SystemParams params = rational("1/2", "5/4");
  const ShiftMeasure nu = ShiftMeasure::bernoulli(0.6);
  SphereOptions so;
  so.workers = opt.workers;

  std::vector<double> distances;
  for (std::size_t n : {4, 8, 12, 16, 20}) {
    distances.push_back(
        kolmogorov_distance(sphere_measure(nu, 1.0, n, params, so), sphere_measure(nu, 100.0, n, params, so)));
  }
  r.seconds = seconds_since(start);
  bool monotone = true;
  for (std::size_t i = 1; i < distances.size(); ++i) monotone = monotone && distances[i] <= 1.1 * distances[i - 1];
  r.passed = monotone && distances.back() <= 0.05;
  r.metric = "d20=" + num(distances.back()) + " monotone=" + (monotone ? "1" : "0");
  std::ostringstream detail;
  detail << "d(n=4,8,12,16,20) =";
  for (double d : distances) detail << ' ' << num(d);
  r.detail = detail.str();
  return r;
}

CriterionResult existence_threshold(const AcceptanceOptions& opt) {
  CriterionResult r = criterion(5, "existence threshold");
  const auto start = Clock::now();
  const SystemParams params = rational("1/2", "3");
  bool refused = false;
  std::string exponent = "none";
  try {
    solve_stationary(0.5, params);
  } catch (const LyapunovSignError& e) {
    refused = true;
    exponent = num(e.exponent());
  }
  const auto path = path_average(ShiftMeasure::bernoulli(0.5), 1.0, 100000, opt.seed ^ kStreamEscape, params);
  const double mass = path.mass_in(0.0, 100.0);
  r.seconds = seconds_since(start);
  r.passed = refused && mass <= 0.05;
  r.metric = std::string("refused=") + (refused ? "1" : "0") + " mass_0_100=" + num(mass);
  r.detail = "lyapunov " + exponent;
  return r;
}

CriterionResult contraction(const AcceptanceOptions& opt) {
  CriterionResult r = criterion(6, "orbit contraction");
  const auto start = Clock::now();
  const SystemParams params = rational("1/2", "3/2");
  const ShiftMeasure nu = ShiftMeasure::bernoulli(0.5);
  bool log_ok = true;
  bool quarter_ok = true;
  double worst_final = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    CounterRng rng(opt.seed ^ kStreamContraction, t);
    const double x = std::exp(std::log(1e-2) + rng.uniform() * std::log(1e4));
    const double y = std::exp(std::log(1e-2) + rng.uniform() * std::log(1e4));
    const Word word = nu.sample_path(200, opt.seed ^ kStreamContraction, 1000 + t);
    const auto report = contraction_diagnostics(x, y, word, params);
    log_ok = log_ok && report.log_nonincreasing;
    quarter_ok = quarter_ok && report.quarter_bound;
    worst_final = std::max(worst_final, report.rows.back().compact_distance);
  }
  r.seconds = seconds_since(start);
  r.passed = log_ok && quarter_ok && worst_final <= 1e-6;
  r.metric = std::string("log_nonincreasing=") + (log_ok ? "1" : "0") + " quarter=" + (quarter_ok ? "1" : "0") +
             " worst_final=" + num(worst_final);
  return r;
}

CriterionResult acim_support(const AcceptanceOptions& opt) {
  CriterionResult r = criterion(7, "invariant density support");
  const SystemParams params = rational("1/2", "3/2");
  UlamOptions uo;
  uo.workers = opt.workers;
  bool ok = true;
  double worst_residual = 0.0;
  double slowest = 0.0;
  std::vector<std::pair<double, double>> hulls;
  std::ostringstream detail;
  for (double gamma : {1.5, 2.0, 3.0}) {
    const auto start = Clock::now();
    const AcimSystem sys(params, gamma);
    const auto density = ulam_density(sys, 4096, uo);
    const auto support = support_intervals(density, 0.01);
    const double elapsed = seconds_since(start);
    slowest = std::max(slowest, elapsed);
    worst_residual = std::max(worst_residual, density.residual);

    const double width = density.bin_width();
    const bool hull_ok = std::abs(support.hull.first - sys.lo()) <= width &&
                         std::abs(support.hull.second - sys.hi()) <= width;
    const bool interior = std::any_of(support.intervals.begin(), support.intervals.end(),
                                      [&](const auto& iv) { return iv.first < gamma && gamma < iv.second; });
    ok = ok && density.residual <= 1e-8 && hull_ok && interior && elapsed < 60.0;
    hulls.push_back(support.hull);
    detail << "gamma " << gamma << ": hull [" << num(support.hull.first) << ", " << num(support.hull.second)
           << "] vs [" << num(sys.lo()) << ", " << num(sys.hi()) << "], " << support.intervals.size()
           << " interval(s); ";
  }
  for (std::size_t i = 0; i < hulls.size(); ++i) {
    for (std::size_t j = i + 1; j < hulls.size(); ++j) ok = ok && hulls[i] != hulls[j];
  }
  r.seconds = slowest;
  r.passed = ok;
  r.metric = "worst_residual=" + num(worst_residual);
  r.detail = detail.str();
  return r;
}

CriterionResult round_trip(const AcceptanceOptions& opt) {
  CriterionResult r = criterion(8, "cylinder round trip");
  const auto start = Clock::now();
  const SystemParams params = rational("1/2", "3/2");
  const AcimSystem sys(params, 2.0);
  UlamOptions uo;
  uo.workers = opt.workers;
  const auto density = ulam_density(sys, 4096, uo);
  CylinderOptions co;
  co.workers = opt.workers;
  const auto table = nu_gamma_cylinders(sys, density, 10, 1000000, opt.seed ^ kStreamCylinders, co);
  std::ostringstream detail;
  detail << "d(n=2,4,6,8) =";
  for (std::size_t n : {2, 4, 6, 8}) detail << ' ' << num(cylinder_roundtrip(sys, density, table, 1.0, n));
  const double distance = cylinder_roundtrip(sys, density, table, 1.0, 10);
  const double exponent = table.lyapunov(params);
  r.seconds = seconds_since(start);
  r.passed = distance <= 0.05 && exponent < 0.0;
  r.metric = "d10=" + num(distance) + " lyapunov=" + num(exponent);
  r.detail = detail.str();
  return r;
}

CriterionResult rotation(const AcceptanceOptions&) {
  CriterionResult r = criterion(9, "rotation number");
  const auto start = Clock::now();
  bool ok = true;
  double worst = 0.0;
  std::ostringstream detail;
  for (const auto& [a, b] : {std::pair{"1/2", "3/2"}, std::pair{"1/3", "5/4"}, std::pair{"0.7", "1.1"}}) {
    const SystemParams params = rational(a, b);
    const double formula = rotation_number(params);
    const double numeric = rotation_number_numeric(params, 1000000);
    worst = std::max(worst, std::abs(formula - numeric));
    ok = ok && std::abs(formula - numeric) <= 1e-5;
    detail << "(" << a << "," << b << "): " << num(formula) << " vs " << num(numeric) << "; ";
  }
  r.seconds = seconds_since(start);
  r.passed = ok;
  r.metric = "worst_gap=" + num(worst);
  r.detail = detail.str();
  return r;
}

CriterionResult holder(const AcceptanceOptions& opt) {
  CriterionResult r = criterion(10, "interval certificates");
  const auto start = Clock::now();
  const SystemParams params = rational("1/2", "3/2");
  const double p = 0.5;
  StationaryOptions so;
  so.workers = opt.workers;
  const auto sol = solve_stationary(p, params, so);
  const double base = sol.measure.mass_in(0.0, 1.0 / params.a);

  std::size_t inclusion = 0;
  std::size_t length = 0;
  std::size_t lower = 0;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (std::uint64_t t = 0; t < 100; ++t) {
    CounterRng rng(opt.seed ^ kStreamHolder, t);
    const double center = 0.1 + 49.9 * rng.uniform();
    const double width = std::min(std::exp(std::log(1e-4) * (1.0 - rng.uniform())), center);
    const auto cert = holder_certificate(center - width / 2.0, center + width / 2.0, p, params);
    inclusion += cert.inclusion_verified;
    length += cert.length_bound_holds;
    const double bound = std::pow(cert.constants.q, static_cast<double>(cert.k + cert.m)) * base;
    const double mass = sol.measure.mass_in(cert.lo, cert.hi, 2.0);
    lower += mass >= bound;
    worst_ratio = std::min(worst_ratio, mass / bound);
  }
  r.seconds = seconds_since(start);
  r.passed = inclusion == 100 && length == 100 && lower == 100;
  r.metric = "inclusion=" + std::to_string(inclusion) + " length_bound=" + std::to_string(length) +
             " lower_bound=" + std::to_string(lower);
  r.detail = "smallest mass/bound ratio " + num(worst_ratio) + ", solver residual " + num(sol.residual);
  return r;
}

CriterionResult approximation(const AcceptanceOptions& opt) {
  CriterionResult r = criterion(11, "universal approximation sequence");
  const auto start = Clock::now();
  const SystemParams params = rational("1/2", "3/2");
  constexpr std::size_t kCount = 2000;
  const auto seq = approx_sequence(truncated_exp_sample, kCount, params, opt.seed ^ kStreamTargets, opt.workers);

  bool bounds = true;
  std::vector<double> images;
  std::vector<Word> words;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const double limit = 1.0 / static_cast<double>(i + 1);
    const AffineMap map = compose(seq[i].word, params);
    bounds = bounds && std::abs(map(1.0) - seq[i].target) < limit && map.slope < limit;
    images.push_back(map(1.0));
    words.push_back(seq[i].word);
  }
  const std::function<double(double)> target = truncated_exp_cdf;
  const double base = kolmogorov_distance(PointMassMeasure::empirical(images), target);

  const InterleavedSequence interleaved(words);
  std::set<Word> seen;
  for (std::uint64_t pos = 1; pos <= 250; ++pos) {
    const Word w = interleaved.at(pos);
    if (w.size() <= 3) seen.insert(w);
  }
  const bool exhausted = seen.size() == 15;
  std::vector<double> mixed;
  for (const Word& w : interleaved.take(kCount)) mixed.push_back(compose(w, params)(1.0));
  const double with_insertions = kolmogorov_distance(PointMassMeasure::empirical(mixed), target);
  r.seconds = seconds_since(start);

  r.passed = bounds && base <= 0.05 && exhausted && std::abs(with_insertions - base) <= 0.02;
  r.metric = "ks=" + num(base) + " ks_interleaved=" + num(with_insertions) + " bounds=" + (bounds ? "1" : "0") +
             " short_words=" + std::to_string(seen.size());
  return r;
}

bool same_bytes(const std::filesystem::path& lhs, const std::filesystem::path& rhs) {
  std::ifstream a(lhs, std::ios::binary);
  std::ifstream b(rhs, std::ios::binary);
  if (!a || !b) return false;
  return std::equal(std::istreambuf_iterator<char>(a), std::istreambuf_iterator<char>(),
                    std::istreambuf_iterator<char>(b), std::istreambuf_iterator<char>());
}

CriterionResult determinism(const AcceptanceOptions& opt) {
  CriterionResult r = criterion(12, "deterministic artifacts");
  const auto start = Clock::now();
  const auto scratch = opt.scratch.value_or(std::filesystem::temp_directory_path() /
                                            ("semiaffine-determinism-" + std::to_string(opt.seed)));
  const unsigned parallel = std::max(2u, opt.workers);
  const auto serial_files = write_artifacts(scratch / "serial", opt.seed, 1);
  const auto parallel_files = write_artifacts(scratch / "parallel", opt.seed, parallel);
  const auto repeat_files = write_artifacts(scratch / "repeat", opt.seed, parallel);
  std::size_t identical = 0;
  std::string mismatched;
  for (std::size_t i = 0; i < serial_files.size(); ++i) {
    if (same_bytes(serial_files[i], parallel_files[i]) && same_bytes(parallel_files[i], repeat_files[i])) {
      ++identical;
    } else {
      mismatched += serial_files[i].filename().string() + " ";
    }
  }
  if (!opt.scratch) std::filesystem::remove_all(scratch);
  r.seconds = seconds_since(start);
  r.passed = identical == serial_files.size();
  r.metric = "identical=" + std::to_string(identical) + "/" + std::to_string(serial_files.size());
  r.detail = mismatched.empty() ? "workers 1 vs " + std::to_string(parallel) + ", twice" : "differs: " + mismatched;
  return r;
}

}  // namespace

std::vector<std::filesystem::path> write_artifacts(const std::filesystem::path& dir, std::uint64_t seed,
                                                   unsigned workers) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> files;
  const SystemParams params = rational("1/2", "5/4");

  StationaryOptions so;
  so.grid = 4096;
  so.workers = workers;
  files.push_back(dir / "stationary.csv");
  write_grid_csv(files.back(), solve_stationary(0.6, params, so).measure);

  SphereOptions sphere;
  sphere.workers = workers;
  files.push_back(dir / "sphere.csv");
  write_point_mass_csv(files.back(), sphere_measure(ShiftMeasure::bernoulli(0.6), 1.0, 14, params, sphere));

  files.push_back(dir / "path.csv");
  write_point_mass_csv(files.back(),
                       path_average(ShiftMeasure::markov(kMarkovExample), 1.0, 10000, seed ^ kStreamPath, params));

  const SystemParams acim_params = rational("1/2", "3/2");
  const AcimSystem sys(acim_params, 2.0);
  UlamOptions uo;
  uo.workers = workers;
  const auto density = ulam_density(sys, 1024, uo);
  files.push_back(dir / "density.csv");
  write_density_csv(files.back(), density);

  CylinderOptions co;
  co.workers = workers;
  const auto table = nu_gamma_cylinders(sys, density, 6, 100000, seed ^ kStreamCylinders, co);
  files.push_back(dir / "cylinders.csv");
  {
    std::ofstream out(files.back(), std::ios::binary);
    out << "word,mass\n";
    for (std::uint64_t i = 0; i < table.mass.size(); ++i) {
      out << Word::from_index(table.depth, i).to_string() << ',' << format_double(table.mass[i]) << '\n';
    }
  }

  const auto seq = approx_sequence(truncated_exp_sample, 200, acim_params, seed ^ kStreamTargets, workers);
  files.push_back(dir / "sequence.csv");
  {
    std::ofstream out(files.back(), std::ios::binary);
    out << "i,word,target,image,error,slope\n";
    for (std::size_t i = 0; i < seq.size(); ++i) {
      out << i + 1 << ',' << seq[i].word.to_string() << ',' << format_double(seq[i].target) << ','
          << format_double(seq[i].image) << ',' << format_double(seq[i].error) << ','
          << format_double(seq[i].slope) << '\n';
    }
  }
  return files;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, const ResultSink& sink) {
  using Runner = CriterionResult (*)(const AcceptanceOptions&);
  static constexpr Runner kCriteria[] = {coincidence,         stationary_moments, sphere_vs_path, start_independence,
                                         existence_threshold, contraction,        acim_support,   round_trip,
                                         rotation,            holder,             approximation,  determinism};
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < std::size(kCriteria); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    CriterionResult result;
    try {
      result = kCriteria[i](options);
    } catch (const std::exception& e) {
      result.id = id;
      result.name = "criterion " + std::to_string(id);
      result.passed = false;
      result.metric = "error";
      result.detail = e.what();
    }
    if (sink) sink(result);
    results.push_back(std::move(result));
  }
  return results;
}

void write_verify_csv(const std::filesystem::path& path, const std::vector<CriterionResult>& results) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "id,name,pass,metric\n";
  for (const auto& r : results) {
    out << r.id << ',' << r.name << ',' << (r.passed ? "pass" : "fail") << ',' << r.metric << '\n';
  }
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream line;
  line << (r.passed ? "PASS" : "FAIL") << "  [" << (r.id < 10 ? " " : "") << r.id << "] " << r.name << ": "
       << r.metric;
  if (!r.detail.empty()) line << " (" << r.detail << ")";
  char timing[32];
  std::snprintf(timing, sizeof timing, " %.2fs", r.seconds);
  line << timing;
  return line.str();
}

}  // namespace semiaffine::runner
