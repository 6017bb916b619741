#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "semiaffine/params.hpp"
#include "semiaffine/shift_measure.hpp"

namespace semiaffine::runner {

/// A validation failure tied to one config field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error("config field '" + field + "': " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Every knob any subcommand reads. Optional fields fall back to per-command
/// defaults; the resolved values are what run.json records.
struct RunConfig {
  std::string a = "1/2";
  std::string b = "5/4";
  double p = 0.6;
  std::optional<Matrix2> markov;
  double gamma = 2.0;
  std::optional<std::uint64_t> n;
  std::size_t grid = std::size_t{1} << 16;
  std::size_t bins = 4096;
  std::uint64_t seed = 20240601;
  unsigned workers = 0;
  double tol = 1e-6;
  std::filesystem::path out = "out";

  double x = 1.0;
  std::optional<double> y;
  std::optional<double> eps;
  std::optional<double> lo;
  std::optional<double> hi;
  std::size_t max_len = 5;
  std::optional<std::uint64_t> iters;
  std::uint64_t samples = 1000000;
  std::size_t depth = 10;
  double threshold = 0.01;
  std::string target = "exp:20";
  bool interleave = false;

  SystemParams params() const;
  /// Bernoulli(p) unless a Markov transition table is configured.
  ShiftMeasure shift_measure() const;
};

/// Reads a config document. A run manifest (an object with a "config" member)
/// is accepted in place of a bare config, which makes manifests replayable.
RunConfig config_from_json(const nlohmann::json& doc, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

nlohmann::json to_json(const RunConfig& config);

/// Field-level checks shared by every subcommand.
void validate(const RunConfig& config);

}  // namespace semiaffine::runner
