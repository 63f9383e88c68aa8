#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace octoslice {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string summary;
  nlohmann::json details;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 0;
};

struct Criterion {
  int id;
  std::string name;
  std::function<CriterionResult(const AcceptanceOptions&)> run;
};

// The twelve acceptance checks, in order.
const std::vector<Criterion>& acceptance_criteria();

// Runs one criterion; exceptions become a failed result.
CriterionResult run_criterion(const Criterion& c, const AcceptanceOptions& opts);

// Runs every criterion (stopping at the first failure when `fail_fast`),
// reporting each result through `on_result` as it completes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& opts, bool fail_fast,
    const std::function<void(const CriterionResult&)>& on_result = {});

void to_json(nlohmann::json& j, const CriterionResult& r);

}  // namespace octoslice
