#pragma once

#include "vfc/report.hpp"
#include "vfc/scenario.hpp"

namespace vfc {

struct RunOptions {
    bool table = true;  // fill Report::table (per-node rows)
};

// Executes the scenario's task. Library errors are caught into Report::error; ParseError and
// IoError propagate.
Report run_scenario(const Scenario& s, const RunOptions& opts = {});

// 0 when every gating check passes, 1 otherwise.
int exit_code(const Report& r);

}  // namespace vfc
