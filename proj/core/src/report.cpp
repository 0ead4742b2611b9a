#include "etherphase/report.hpp"

#include <json.hpp>

#include <iomanip>
#include <ostream>

namespace etherphase {

bool CheckReport::all_pass() const {
    for (const auto& r : records) {
        bool ok = r.expected_fail ? !r.pass : r.pass;
        if (!ok) return false;
    }
    return true;
}

const CheckRecord* CheckReport::find(const std::string& id) const {
    for (const auto& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

void write_report_csv(std::ostream& os, const CheckReport& report) {
    os << "# fixture: " << report.fixture << "\n";
    os << "# columns: id,samples,max_residual,tolerance,pass,expected_fail,note\n";
    os << std::setprecision(12);
    for (const auto& r : report.records) {
        os << r.id << ',' << r.samples << ',' << r.max_residual << ',' << r.tolerance
           << ',' << (r.pass ? 1 : 0) << ',' << (r.expected_fail ? 1 : 0) << ','
           << r.note << "\n";
    }
}

void write_report_jsonl(std::ostream& os, const CheckReport& report) {
    for (const auto& r : report.records) {
        nlohmann::json j{{"fixture", report.fixture},
                         {"id", r.id},
                         {"samples", r.samples},
                         {"max_residual", r.max_residual},
                         {"tolerance", r.tolerance},
                         {"pass", r.pass},
                         {"expected_fail", r.expected_fail},
                         {"wall_ms", r.wall_ms},
                         {"note", r.note}};
        os << j.dump() << "\n";
    }
}

}  // namespace etherphase
