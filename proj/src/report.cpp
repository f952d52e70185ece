#include "pstrace/report.hpp"

#include <json.hpp>

namespace pstrace {

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string report_json(const std::vector<Report>& reports, bool include_timings) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json entry;
        entry["entry"] = r.entry;
        entry["pass"] = r.all_pass();
        entry["checks"] = nlohmann::json::array();
        for (const auto& c : r.checks) {
            nlohmann::json cj;
            cj["name"] = c.name;
            cj["property"] = c.property;
            cj["pass"] = c.pass;
            cj["witness"] = nlohmann::json::parse(c.witness.empty() ? "{}" : c.witness);
            if (include_timings) cj["ms"] = c.ms;
            entry["checks"].push_back(std::move(cj));
        }
        out.push_back(std::move(entry));
    }
    return out.dump(2);
}

std::string report_text(const std::vector<Report>& reports) {
    std::string out;
    std::size_t passed = 0, total = 0;
    for (const auto& r : reports) {
        out += r.entry + "\n";
        for (const auto& c : r.checks) {
            out += std::string("  [") + (c.pass ? "pass" : "FAIL") + "] " + c.name + ": " +
                   c.property + "\n";
            if (!c.witness.empty() && c.witness != "{}")
                out += (c.pass ? "         data: " : "         witness: ") + c.witness + "\n";
            ++total;
            if (c.pass) ++passed;
        }
    }
    out += std::to_string(passed) + "/" + std::to_string(total) + " checks passed\n";
    return out;
}

}  // namespace pstrace
