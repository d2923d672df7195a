#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mpsd {

enum class Status { pass, fail, inconclusive };

const char* to_string(Status s);

struct Check {
  std::string name;
  bool passed = false;
  double value = std::numeric_limits<double>::quiet_NaN();
  double bound = std::numeric_limits<double>::quiet_NaN();
};

// Structured outcome of a multi-part test. Payloads (matrices, scans, witnesses)
// go into data; keys are sorted on output so serialization is byte stable.
struct Report {
  std::string name;
  std::vector<Check> checks;
  nlohmann::json data = nlohmann::json::object();
  bool inconclusive = false;
  std::optional<bool> matches_expected;

  explicit Report(std::string report_name = {}) : name(std::move(report_name)) {}

  bool add(std::string check_name, bool passed,
           double value = std::numeric_limits<double>::quiet_NaN(),
           double bound = std::numeric_limits<double>::quiet_NaN());
  const Check* find(const std::string& check_name) const;
  bool all_passed() const;
  Status status() const;
};

nlohmann::json to_json(const Report& r);

}  // namespace mpsd
