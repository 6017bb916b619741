#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include "semiaffine/error.hpp"

namespace semiaffine::runner {
namespace {

using nlohmann::json;

std::string rational_field(const json& value, const char* field) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number()) {
    // Decimal text of the double; parse_rational then keeps it exact.
    const double d = value.get<double>();
    std::ostringstream text;
    text.precision(17);
    text << d;
    return text.str();
  }
  throw ConfigError(field, "expected a number or a \"num/den\" string");
}

template <class T>
T number_field(const json& value, const char* field) {
  if (!value.is_number()) throw ConfigError(field, "expected a number");
  if constexpr (std::is_integral_v<T>) {
    if (!value.is_number_integer() || (!value.is_number_unsigned() && value.get<std::int64_t>() < 0)) {
      throw ConfigError(field, "expected a nonnegative integer");
    }
  }
  return value.get<T>();
}

Matrix2 matrix_field(const json& value) {
  if (!value.is_array() || value.size() != 2) throw ConfigError("markov", "expected a 2x2 array");
  Matrix2 m{};
  for (std::size_t i = 0; i < 2; ++i) {
    if (!value[i].is_array() || value[i].size() != 2) throw ConfigError("markov", "expected a 2x2 array");
    for (std::size_t j = 0; j < 2; ++j) m[i][j] = number_field<double>(value[i][j], "markov");
  }
  return m;
}

}  // namespace

SystemParams RunConfig::params() const {
  try {
    return SystemParams::parse(a, b);
  } catch (const Error& e) {
    // parse reports which slope is wrong in its message
    throw ConfigError("a/b", e.what());
  }
}

ShiftMeasure RunConfig::shift_measure() const {
  try {
    if (markov) return ShiftMeasure::markov(*markov);
    return ShiftMeasure::bernoulli(p);
  } catch (const Error& e) {
    throw ConfigError(markov ? "markov" : "p", e.what());
  }
}

RunConfig config_from_json(const json& doc, RunConfig c) {
  if (!doc.is_object()) throw ConfigError("<root>", "expected a JSON object");
  const json& fields = doc.contains("config") && doc.at("config").is_object() ? doc.at("config") : doc;

  static const std::set<std::string> known = {
      "a",     "b",     "p",         "markov", "gamma", "n",       "grid",    "bins",  "seed",
      "workers", "tol", "out",       "x",      "y",     "eps",     "lo",      "hi",    "max_len",
      "iters", "samples", "depth",   "threshold", "target", "interleave"};
  for (const auto& [key, value] : fields.items()) {
    if (!known.contains(key)) throw ConfigError(key, "unknown field");
    if (value.is_null()) continue;
    if (key == "a") c.a = rational_field(value, "a");
    else if (key == "b") c.b = rational_field(value, "b");
    else if (key == "p") c.p = number_field<double>(value, "p");
    else if (key == "markov") c.markov = matrix_field(value);
    else if (key == "gamma") c.gamma = number_field<double>(value, "gamma");
    else if (key == "n") c.n = number_field<std::uint64_t>(value, "n");
    else if (key == "grid") c.grid = number_field<std::size_t>(value, "grid");
    else if (key == "bins") c.bins = number_field<std::size_t>(value, "bins");
    else if (key == "seed") c.seed = number_field<std::uint64_t>(value, "seed");
    else if (key == "workers") c.workers = number_field<unsigned>(value, "workers");
    else if (key == "tol") c.tol = number_field<double>(value, "tol");
    else if (key == "out") {
      if (!value.is_string()) throw ConfigError("out", "expected a path string");
      c.out = value.get<std::string>();
    } else if (key == "x") c.x = number_field<double>(value, "x");
    else if (key == "y") c.y = number_field<double>(value, "y");
    else if (key == "eps") c.eps = number_field<double>(value, "eps");
    else if (key == "lo") c.lo = number_field<double>(value, "lo");
    else if (key == "hi") c.hi = number_field<double>(value, "hi");
    else if (key == "max_len") c.max_len = number_field<std::size_t>(value, "max_len");
    else if (key == "iters") c.iters = number_field<std::uint64_t>(value, "iters");
    else if (key == "samples") c.samples = number_field<std::uint64_t>(value, "samples");
    else if (key == "depth") c.depth = number_field<std::size_t>(value, "depth");
    else if (key == "threshold") c.threshold = number_field<double>(value, "threshold");
    else if (key == "target") {
      if (!value.is_string()) throw ConfigError("target", "expected a string such as \"exp:20\" or \"dirac:3\"");
      c.target = value.get<std::string>();
    } else if (key == "interleave") {
      if (!value.is_boolean()) throw ConfigError("interleave", "expected true or false");
      c.interleave = value.get<bool>();
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", std::string("invalid JSON: ") + e.what());
  }
  return config_from_json(doc, std::move(base));
}

json to_json(const RunConfig& c) {
  auto opt = [](const auto& value) -> json { return value ? json(*value) : json(nullptr); };
  json doc = {{"a", c.a},
              {"b", c.b},
              {"p", c.p},
              {"markov", c.markov ? json(*c.markov) : json(nullptr)},
              {"gamma", c.gamma},
              {"n", opt(c.n)},
              {"grid", c.grid},
              {"bins", c.bins},
              {"seed", c.seed},
              {"workers", c.workers},
              {"tol", c.tol},
              {"out", c.out.string()},
              {"x", c.x},
              {"y", opt(c.y)},
              {"eps", opt(c.eps)},
              {"lo", opt(c.lo)},
              {"hi", opt(c.hi)},
              {"max_len", c.max_len},
              {"iters", opt(c.iters)},
              {"samples", c.samples},
              {"depth", c.depth},
              {"threshold", c.threshold},
              {"target", c.target},
              {"interleave", c.interleave}};
  return doc;
}

void validate(const RunConfig& c) {
  c.params();
  if (!c.markov && !(c.p > 0.0 && c.p < 1.0)) throw ConfigError("p", "must lie strictly between 0 and 1");
  if (c.markov) c.shift_measure();
  if (!(c.gamma > 1.0)) throw ConfigError("gamma", "must exceed 1");
  if (c.grid < 3) throw ConfigError("grid", "needs at least 3 nodes");
  if (c.bins < 64) throw ConfigError("bins", "needs at least 64 bins");
  if (!(c.tol > 0.0)) throw ConfigError("tol", "must be positive");
  if (!(c.x >= 0.0) || !std::isfinite(c.x)) throw ConfigError("x", "must be a finite number >= 0");
  if (c.eps && !(*c.eps > 0.0)) throw ConfigError("eps", "must be positive");
  if (c.y && !(*c.y > 0.0)) throw ConfigError("y", "must be positive");
  if (c.lo && c.hi && !(*c.lo < *c.hi)) throw ConfigError("lo", "must be below hi");
  if (c.depth > 12) throw ConfigError("depth", "at most 12");
  if (!(c.threshold > 0.0)) throw ConfigError("threshold", "must be positive");
  if (c.out.empty()) throw ConfigError("out", "must not be empty");
}

}  // namespace semiaffine::runner
