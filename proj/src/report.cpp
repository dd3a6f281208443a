#include "vfc/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "vfc/errors.hpp"

namespace vfc {

bool Check::pass() const {
    if (!std::isfinite(value)) return false;
    switch (compare) {
        case Compare::AbsDiff:
            return std::abs(value - expected) <= tolerance;
        case Compare::RelDiff:
            return std::abs(value - expected) <= tolerance * std::max(1.0, std::abs(expected));
        case Compare::AtMost:
            return value <= expected + tolerance;
        case Compare::AtLeast:
            return value >= expected - tolerance;
    }
    return false;
}

Check make_check(std::string name, double value, double expected, double tol, Compare cmp, std::string basis) {
    Check c;
    c.name = std::move(name);
    c.value = value;
    c.expected = expected;
    c.tolerance = tol;
    c.compare = cmp;
    c.basis = std::move(basis);
    return c;
}

bool Report::passed() const {
    if (!error.empty()) return false;
    for (const Check& c : checks)
        if (c.gating && !c.pass()) return false;
    return true;
}

std::string to_string(Compare c) {
    switch (c) {
        case Compare::AbsDiff: return "abs_diff";
        case Compare::RelDiff: return "rel_diff";
        case Compare::AtMost: return "at_most";
        case Compare::AtLeast: return "at_least";
    }
    return "?";
}

Compare compare_from_string(const std::string& s) {
    if (s == "abs_diff") return Compare::AbsDiff;
    if (s == "rel_diff") return Compare::RelDiff;
    if (s == "at_most") return Compare::AtMost;
    if (s == "at_least") return Compare::AtLeast;
    throw ParseError("unknown comparison '" + s + "'");
}

namespace {

// JSON has no NaN/Inf; those go out as strings.
nlohmann::json number(double x) {
    if (x == 0) return 0.0;
    if (std::isfinite(x)) return x;
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

double read_number(const nlohmann::json& j) {
    if (j.is_number()) return j.get<double>();
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::nan("");
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    throw ParseError("not a number: " + s);
}

}  // namespace

nlohmann::json to_json(const Check& c) {
    nlohmann::json j;
    j["name"] = c.name;
    j["value"] = number(c.value);
    j["expected"] = number(c.expected);
    j["tolerance"] = number(c.tolerance);
    j["compare"] = to_string(c.compare);
    j["basis"] = c.basis;
    j["gating"] = c.gating;
    j["pass"] = c.pass();
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

nlohmann::json to_json(const Report& r) {
    nlohmann::json j;
    j["task"] = r.task;
    j["passed"] = r.passed();
    j["checks"] = nlohmann::json::array();
    for (const Check& c : r.checks) j["checks"].push_back(to_json(c));
    if (!r.data.empty()) j["data"] = r.data;
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

std::vector<Check> checks_from_json(const nlohmann::json& j) {
    std::vector<Check> out;
    for (const auto& e : j.at("checks")) {
        Check c;
        c.name = e.at("name").get<std::string>();
        c.value = read_number(e.at("value"));
        c.expected = read_number(e.at("expected"));
        c.tolerance = read_number(e.at("tolerance"));
        c.compare = compare_from_string(e.at("compare").get<std::string>());
        c.basis = e.at("basis").get<std::string>();
        c.gating = e.at("gating").get<bool>();
        if (e.contains("note")) c.note = e.at("note").get<std::string>();
        out.push_back(std::move(c));
    }
    return out;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

}  // namespace

void write_csv(std::ostream& os, const Table& t) {
    for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csv_field(t.header[i]);
    os << "\r\n";
    for (size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        bool first = true;
        if (!t.labels.empty()) {
            os << csv_field(t.labels.at(r));
            first = false;
        }
        for (double x : row) {
            os << (first ? "" : ",") << format_number(x);
            first = false;
        }
        os << "\r\n";
    }
}

void emit_csv(const Table& t, const std::string& path) {
    std::ostringstream ss;
    write_csv(ss, t);
    emit_text(ss.str(), path);
}

void emit_text(const std::string& text, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace vfc
