#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace semiaffine::runner {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string metric;  // deterministic headline numbers
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  unsigned workers = 0;
  /// Scratch space for the determinism criterion; a temp dir when unset.
  std::optional<std::filesystem::path> scratch;
  /// Restrict to these criterion ids; empty runs all twelve.
  std::vector<int> only;
};

using ResultSink = std::function<void(const CriterionResult&)>;

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, const ResultSink& sink = {});

/// The deterministic artifact set regenerated by the determinism criterion:
/// stationary grid, sphere atoms, path average, Ulam density, cylinder table
/// and an approximation sequence, all as CSV.
std::vector<std::filesystem::path> write_artifacts(const std::filesystem::path& dir, std::uint64_t seed,
                                                   unsigned workers);

/// `id,name,pass,metric` rows; no timings, so reruns compare byte for byte.
void write_verify_csv(const std::filesystem::path& path, const std::vector<CriterionResult>& results);

std::string format_line(const CriterionResult& result);

}  // namespace semiaffine::runner
