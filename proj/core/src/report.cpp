#include "mpsd/report.hpp"

#include <algorithm>
#include <cmath>

namespace mpsd {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "unknown";
}

bool Report::add(std::string check_name, bool passed, double value, double bound) {
  checks.push_back({std::move(check_name), passed, value, bound});
  return passed;
}

const Check* Report::find(const std::string& check_name) const {
  auto it = std::find_if(checks.begin(), checks.end(),
                         [&](const Check& c) { return c.name == check_name; });
  return it == checks.end() ? nullptr : &*it;
}

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Status Report::status() const {
  if (inconclusive) return Status::inconclusive;
  return all_passed() ? Status::pass : Status::fail;
}

namespace {
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}
}  // namespace

nlohmann::json to_json(const Report& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["status"] = to_string(r.status());
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed},
                      {"value", number(c.value)}, {"bound", number(c.bound)}});
  }
  j["checks"] = std::move(checks);
  j["data"] = r.data;
  if (r.matches_expected) j["matches_expected"] = *r.matches_expected;
  return j;
}

}  // namespace mpsd
