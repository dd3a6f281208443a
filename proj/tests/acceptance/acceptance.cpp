#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vfc/reproduce.hpp"

// Runs the acceptance criteria and prints one verdict line per criterion. Failing gating checks are
// listed underneath their criterion.
int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::vector<int> which;
    bool verbose = false;
    app.add_option("--criterion", which, "Criterion number(s); all when omitted")->check(CLI::Range(1, vfc::kCriteria));
    app.add_flag("--verbose", verbose, "Print every check");
    CLI11_PARSE(app, argc, argv);
    if (which.empty())
        for (int n = 1; n <= vfc::kCriteria; ++n) which.push_back(n);

    int failed = 0;
    for (int n : which) {
        const vfc::SuiteResult r = vfc::run_criterion(n);
        const bool ok = r.passed();
        failed += ok ? 0 : 1;
        std::printf("criterion %d: %s %s (%.1fs)\n", n, ok ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
        if (!r.error.empty()) std::printf("  error: %s\n", r.error.c_str());
        for (const vfc::Check& c : r.checks) {
            if (!verbose && (c.pass() || !c.gating)) continue;
            std::printf("  [%s%s] %s: value %.10g, expected %.10g, %s tol %.1e\n", c.pass() ? "ok" : "FAIL",
                        c.gating ? "" : ", informational", c.name.c_str(), c.value, c.expected,
                        vfc::to_string(c.compare).c_str(), c.tolerance);
        }
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
