#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace nilalg {

enum class Status { pass, fail, not_applicable, pending };

const char* status_name(Status s);

/// One verified statement: what was checked, on which parameters, and the outcome.
struct CheckResult {
  std::string check;
  nlohmann::json parameters = nlohmann::json::object();
  Status status = Status::pass;
  std::string counterexample;
  std::string detail;
};

CheckResult make_result(std::string check, nlohmann::json parameters, bool ok, std::string counterexample = {},
                        std::string detail = {});

nlohmann::json to_json(const CheckResult& r);
nlohmann::json report_json(const std::vector<CheckResult>& results);
bool any_failed(const std::vector<CheckResult>& results);

}  // namespace nilalg
