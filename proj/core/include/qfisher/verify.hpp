#pragma once

// Randomized invariant suites. Shared by `qfg verify` and the acceptance test.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qfisher::verify {

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // largest observed deviation (or the failing metric)
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;

  bool passed() const;
};

const std::vector<std::string>& suite_names();

/// Throws ParseError for an unknown suite name.
SuiteResult run_suite(std::string_view name, std::uint64_t seed = kDefaultSeed);

std::vector<SuiteResult> run_all(std::uint64_t seed = kDefaultSeed);

}  // namespace qfisher::verify
