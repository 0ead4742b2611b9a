#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace etherphase {

struct CheckRecord {
    std::string id;           // identity tag, e.g. "eq2.3-skew"
    int samples = 0;
    double max_residual = 0;
    double tolerance = 0;
    bool pass = false;
    bool expected_fail = false;  // the identity is supposed to break here
    double wall_ms = 0;
    std::string note;
};

struct CheckReport {
    std::string fixture;
    std::vector<CheckRecord> records;

    // expected-fail records count as passing when they do fail
    bool all_pass() const;
    const CheckRecord* find(const std::string& id) const;
};

void write_report_csv(std::ostream& os, const CheckReport& report);
void write_report_jsonl(std::ostream& os, const CheckReport& report);

}  // namespace etherphase
