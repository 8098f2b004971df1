#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace loewner {

struct CheckResult {
  std::string check;
  bool passed = false;
  double margin = 0.0;
  nlohmann::json params = nlohmann::json::object();
};

using Report = std::vector<CheckResult>;

nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
// Entries with params.asserted == false are recorded but never fail a report.
bool all_passed(const Report& r);

}  // namespace loewner
