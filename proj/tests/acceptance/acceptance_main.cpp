#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "acceptance.hpp"

using namespace semiaffine::runner;

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria, one line each"};
  AcceptanceOptions options;
  std::string scratch = (std::filesystem::temp_directory_path() / "semiaffine_acceptance").string();
  app.add_option("--seed", options.seed);
  app.add_option("--workers", options.workers);
  app.add_option("--scratch", scratch);
  app.add_option("--only", options.only, "run a single criterion by id");
  CLI11_PARSE(app, argc, argv);
  options.scratch = scratch;

  bool all = true;
  const auto results = run_acceptance(options, [&](const CriterionResult& r) {
    std::cout << format_line(r) << std::endl;
    all = all && r.passed;
  });
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
