// Acceptance suite: runs the full verification table at p in {3,5} up to
// n = 5 and prints one line per criterion group. Exact integer equality
// everywhere; exit status is nonzero if any claim fails.

#include <cstdio>
#include <map>
#include <string>

#include "rla/verification.hpp"

namespace {

const std::map<std::string, std::string> kCriteria = {
    {"01", "rank table via registered tori"},
    {"02", "dimension table"},
    {"03", "self-centralizing dichotomy"},
    {"04", "dim Tor(K(n)) = p^n - p^r"},
    {"05", "root-space identities"},
    {"06", "decomposition-theorem suite"},
    {"07", "W(1) module table at p = 5"},
    {"08", "brute-force oracles vs search"},
    {"09", "Premet invariance"},
    {"10", "property suites (Jacobson, Jacobi, modules, quotients)"},
    {"11", "summand detection"},
};

}  // namespace

int main() {
    rla::VerifyOptions opts;
    opts.p_list = {3, 5};
    opts.max_n = 5;
    opts.seed = 0;
    opts.search_budget = 200;

    rla::VerifyPaperReport report;
    try {
        report = rla::verify_paper(opts);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
        return 2;
    }

    auto summary = report.criteria_summary();
    bool ok = true;
    for (const auto& [group, passed] : summary) {
        auto it = kCriteria.find(group);
        std::string label = it == kCriteria.end() ? "(ungrouped)" : it->second;
        std::printf("[%s] criterion %s: %s\n", passed ? "PASS" : "FAIL", group.c_str(),
                    label.c_str());
        ok = ok && passed;
    }
    for (const auto& c : report.claims) {
        if (c.status == rla::ClaimStatus::Pass) continue;
        std::printf("  [%s] %s: expected %lld, computed %lld%s%s\n",
                    rla::to_string(c.status).c_str(), c.id.c_str(),
                    static_cast<long long>(c.expected), static_cast<long long>(c.computed),
                    c.note.empty() ? "" : " - ", c.note.c_str());
    }
    std::printf("%zu claims checked\n", report.claims.size());
    return ok ? 0 : 1;
}
