#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vfc/report.hpp"

namespace vfc {

struct SuiteResult {
    std::string name;
    std::string title;
    std::vector<Check> checks;
    nlohmann::json data = nlohmann::json::object();
    double seconds = 0;
    std::string error;

    bool passed() const;
};

constexpr int kCriteria = 14;

std::string criterion_title(int n);
// Criterion n (1..14). Library errors are caught and recorded in SuiteResult::error.
SuiteResult run_criterion(int n);

// "criterion-N", "all", or a named group: hopf-s3, hopf-s5, singular-s2, products, surfaces, gauss,
// cross-validation, structure, futaki, wirtinger, optimizer, conformal.
std::vector<std::string> suite_names();
// Throws ParseError for an unknown name.
std::vector<SuiteResult> run_suite(const std::string& name);

Report suite_report(const std::vector<SuiteResult>& results);
nlohmann::json to_json(const SuiteResult& r);

}  // namespace vfc
