#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace vfc {

// How a measured value is compared with its expectation.
enum class Compare {
    AbsDiff,  // |value − expected| ≤ tol
    RelDiff,  // |value − expected| ≤ tol · max(1, |expected|)
    AtMost,   // value ≤ expected + tol
    AtLeast,  // value ≥ expected − tol
};

struct Check {
    std::string name;
    double value = 0;
    double expected = 0;
    double tolerance = 0;
    Compare compare = Compare::AbsDiff;
    // Where the expected value comes from: "closed_form" (a formula of the theory), "oracle" (an
    // independent computation in this code base) or "structural" (a definitional identity).
    std::string basis = "closed_form";
    bool gating = true;  // non-gating checks are reported but do not affect the verdict
    std::string note;

    bool pass() const;
};

Check make_check(std::string name, double value, double expected, double tol, Compare cmp,
                 std::string basis = "closed_form");

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> labels;  // optional leading text column, one per row
};

struct Report {
    std::string task;
    std::vector<Check> checks;
    nlohmann::json data = nlohmann::json::object();
    Table table;
    std::string error;  // set when the run aborted with a library error

    bool passed() const;
};

std::string to_string(Compare c);
Compare compare_from_string(const std::string& s);

nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const Report& r);
// Re-parses the checks of a serialized report; pass() is recomputed from the stored numbers.
std::vector<Check> checks_from_json(const nlohmann::json& j);

// 17 significant digits.
std::string format_number(double x);
// RFC 4180: CRLF line ends, header row first, fields quoted when they contain , " CR or LF.
void write_csv(std::ostream& os, const Table& t);
// Throws IoError naming the path.
void emit_csv(const Table& t, const std::string& path);
void emit_text(const std::string& text, const std::string& path);

}  // namespace vfc
