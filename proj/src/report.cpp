#include "loewner/report.hpp"

#include <cmath>

namespace loewner {

nlohmann::json to_json(const CheckResult& c) {
  nlohmann::json j;
  j["check"] = c.check;
  j["passed"] = c.passed;
  // JSON has no infinities; unbounded margins are written as null.
  if (std::isfinite(c.margin))
    j["margin"] = c.margin;
  else
    j["margin"] = nullptr;
  j["params"] = c.params;
  return j;
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : r) j.push_back(to_json(c));
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  for (const auto& e : j) {
    CheckResult c;
    c.check = e.at("check").get<std::string>();
    c.passed = e.at("passed").get<bool>();
    c.margin = e.at("margin").is_null() ? INFINITY : e.at("margin").get<double>();
    if (e.contains("params")) c.params = e.at("params");
    r.push_back(std::move(c));
  }
  return r;
}

bool all_passed(const Report& r) {
  for (const auto& c : r)
    if (!c.passed && (!c.params.is_object() || c.params.value("asserted", true))) return false;
  return true;
}

}  // namespace loewner
