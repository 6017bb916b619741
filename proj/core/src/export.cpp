#include "semiaffine/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "semiaffine/error.hpp"

namespace semiaffine {
namespace {

using nlohmann::json;

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

// JSON has no infinities; they are written as strings so nothing is lost.
json number(double value) {
  if (std::isfinite(value)) return value;
  if (std::isnan(value)) return "nan";
  return value > 0 ? "inf" : "-inf";
}

void write_json(const std::filesystem::path& path, const json& doc) {
  auto out = open_output(path);
  out << doc.dump(2) << '\n';
}

json map_json(const ExactAffineMap& map) {
  return {{"slope", map.slope.get_str()},
          {"intercept", map.intercept.get_str()},
          {"slope_value", map.slope.get_d()},
          {"intercept_value", map.intercept.get_d()}};
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_grid_csv(const std::filesystem::path& path, const GridMeasure& mu) {
  auto out = open_output(path);
  out << "u,x,cdf\n";
  const auto values = mu.cdf_values();
  for (std::size_t j = 0; j < values.size(); ++j) {
    out << format_double(mu.u_at(j)) << ',' << format_double(mu.x_at(j)) << ',' << format_double(values[j])
        << '\n';
  }
}

void write_grid_sidecar(const std::filesystem::path& path, const GridMeasure& mu, const GridSidecar& info) {
  json doc = {{"a", info.a},
              {"b", info.b},
              {"p", info.p},
              {"N", mu.nodes()},
              {"tol", info.tol},
              {"residual", info.residual},
              {"mass_at_infinity", mu.mass_at_infinity()},
              {"mean", number(mu.moment(1))},
              {"second_moment", number(mu.moment(2))},
              {"iterations", info.iterations}};
  write_json(path, doc);
}

void write_point_mass_csv(const std::filesystem::path& path, const PointMassMeasure& mu) {
  auto out = open_output(path);
  out << "u,x,weight\n";
  for (const Atom& atom : mu.atoms()) {
    out << format_double(atom.u) << ',' << format_double(from_compact(atom.u)) << ','
        << format_double(atom.weight) << '\n';
  }
}

void write_density_csv(const std::filesystem::path& path, const UlamDensity& density) {
  auto out = open_output(path);
  out << "bin_left,bin_right,mass\n";
  for (std::size_t i = 0; i < density.bins(); ++i) {
    out << format_double(density.bin_left(i)) << ',' << format_double(density.bin_right(i)) << ','
        << format_double(density.mass[i]) << '\n';
  }
}

void write_support_json(const std::filesystem::path& path, const SupportReport& report, double gamma) {
  json intervals = json::array();
  for (const auto& [lo, hi] : report.intervals) intervals.push_back({lo, hi});
  json doc = {{"gamma", gamma}, {"intervals", intervals}, {"hull", {report.hull.first, report.hull.second}}};
  write_json(path, doc);
}

void write_sequence(const std::filesystem::path& words_path, const std::filesystem::path& sidecar_path,
                    const std::vector<ApproxElement>& sequence) {
  {
    auto out = open_output(words_path);
    for (const auto& element : sequence) out << element.word.to_string() << '\n';
  }
  json elements = json::array();
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const auto& e = sequence[i];
    elements.push_back({{"i", i + 1},
                        {"length", e.word.size()},
                        {"target", e.target},
                        {"image", e.image},
                        {"error", e.error},
                        {"slope", e.slope}});
  }
  write_json(sidecar_path, json{{"count", sequence.size()}, {"elements", elements}});
}

void write_coincidence_json(const std::filesystem::path& path, const std::vector<CoincidenceClass>& classes,
                            std::size_t max_len, const SystemParams& params) {
  json list = json::array();
  for (const auto& cls : classes) {
    json words = json::array();
    for (const auto& w : cls.words) words.push_back(w.to_string());
    list.push_back({{"map", map_json(cls.map)}, {"words", words}});
  }
  json doc = {{"params", params.describe()}, {"max_len", max_len}, {"classes", list}};
  write_json(path, doc);
}

void write_certificate_json(const std::filesystem::path& path, const HolderCertificate& c) {
  json doc = {{"interval", {c.lo, c.hi}},
              {"center", c.center},
              {"length", c.length},
              {"k", c.k},
              {"m", c.m},
              {"word", c.word.to_string()},
              {"slope", c.slope},
              {"image_of_zero", c.image_of_zero},
              {"image_of_inv_a", c.image_of_inv_a},
              {"inclusion_verified", c.inclusion_verified},
              {"length_bound", c.length_bound},
              {"length_bound_holds", c.length_bound_holds},
              {"retries", c.retries},
              {"constants",
               {{"k_bound", c.constants.k_bound},
                {"c1", c.constants.c1},
                {"c2", c.constants.c2},
                {"c3", c.constants.c3},
                {"c5", c.constants.c5},
                {"q", c.constants.q}}}};
  write_json(path, doc);
}

}  // namespace semiaffine
