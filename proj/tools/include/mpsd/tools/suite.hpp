#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpsd/report.hpp"

namespace mpsd::suite {

struct Criterion {
  int id;
  std::string name;
  std::string title;
  double time_budget_seconds;
};

const std::vector<Criterion>& criteria();

// Runs one experiment. Checks are phrased so that every check passes exactly when
// the outcome is the expected one, including the counterexamples.
Report run(int id, std::uint64_t seed);

// Derived seed for sub-experiment tag so experiments do not share random streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

struct SuiteResult {
  nlohmann::json json;
  bool all_match = true;
};

SuiteResult run_all(std::uint64_t seed);

}  // namespace mpsd::suite
