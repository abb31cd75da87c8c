#pragma once

// Property suites behind `verify-identities`.  Every suite is deterministic
// for a fixed configuration and seed.

#include <cstdint>
#include <string>
#include <vector>

#include "dser/io.hpp"

namespace dser {

struct SuiteConfig {
  std::string ring = "laurent";  // "laurent" selects symbolic parameters
  std::size_t n = 2;
  std::size_t m = 2;
  Ordering ordering = Ordering::Interleaved;
  std::uint64_t seed = 1;
  std::size_t samples = 20;
  RuleTable rules = RuleTable::standard();
};

struct SuiteFailure {
  std::string id;
  std::string identity;
  Json inputs;
  Json expected;
  Json actual;
};

struct SuiteReport {
  std::string suite;
  std::string ring;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<SuiteFailure> failures;
  double wall_seconds = 0;

  bool ok() const { return failures.empty(); }
};

/// roy, n1-table, tau-sigma, block-oq, eo-equality, split, dilation, normality.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all".  Configuration problems throw Error.
std::vector<SuiteReport> run_suite(const std::string& name, const SuiteConfig& config);

Json report_to_json(const std::vector<SuiteReport>& reports, bool timing);
std::string report_to_text(const std::vector<SuiteReport>& reports, bool timing);

}  // namespace dser
