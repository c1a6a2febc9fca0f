#include "nilalg/report.hpp"

#include <algorithm>

namespace nilalg {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::not_applicable: return "not applicable";
    case Status::pending: return "pending";
  }
  return "?";
}

CheckResult make_result(std::string check, nlohmann::json parameters, bool ok, std::string counterexample,
                        std::string detail) {
  CheckResult r;
  r.check = std::move(check);
  r.parameters = std::move(parameters);
  r.status = ok ? Status::pass : Status::fail;
  r.counterexample = std::move(counterexample);
  r.detail = std::move(detail);
  return r;
}

nlohmann::json to_json(const CheckResult& r) {
  nlohmann::json j;
  j["check"] = r.check;
  j["parameters"] = r.parameters;
  j["status"] = status_name(r.status);
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

nlohmann::json report_json(const std::vector<CheckResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) arr.push_back(to_json(r));
  return arr;
}

bool any_failed(const std::vector<CheckResult>& results) {
  return std::any_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == Status::fail; });
}

}  // namespace nilalg
