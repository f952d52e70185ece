#pragma once

#include <string>
#include <vector>

namespace pstrace {

/// One verification record.  Failures always carry a machine-readable
/// witness (JSON text) naming the exact elements and functionals involved.
struct CheckResult {
    std::string name;      // short slug, stable across runs
    std::string property;  // the structural statement being verified
    bool pass = false;
    std::string witness;   // JSON object text; "{}" when passing
    double ms = 0.0;
};

struct Report {
    std::string entry;
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

/// Machine form.  Timings are volatile, so they are omitted unless asked
/// for; everything else is deterministic for identical inputs.
std::string report_json(const std::vector<Report>& reports, bool include_timings);

/// Human form, one line per check.
std::string report_text(const std::vector<Report>& reports);

}  // namespace pstrace
