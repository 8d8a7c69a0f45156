#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rla/reports.hpp"

namespace rla {

struct VerifyOptions {
    std::vector<uint32_t> p_list{3, 5};
    uint32_t max_n = 5;
    uint64_t seed = 0;
    size_t threads = 0;  // 0 = RLA_THREADS env var, else hardware concurrency
    size_t search_budget = 200;
};

// Whole-table verification: every desk-scale claim, one Claim record each.
// Claim ids are prefixed by the criterion group ("01".."11"), so reports sort
// into criterion order.
struct VerifyPaperReport {
    std::vector<Claim> claims;

    bool all_pass() const { return rla::all_pass(claims); }
    // (group, passed) in id order, fail on any FAIL inside the group
    std::vector<std::pair<std::string, bool>> criteria_summary() const;
};

VerifyPaperReport verify_paper(const VerifyOptions& opts = {});

std::string verify_report_to_json(const VerifyPaperReport& report, const VerifyOptions& opts);

// Human-readable one-line-per-criterion summary.
std::string verify_report_summary(const VerifyPaperReport& report);

}  // namespace rla
