#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rla/algebra.hpp"
#include "rla/cartan.hpp"
#include "rla/tori.hpp"

namespace rla {

enum class ClaimStatus { Pass, Fail, Warn, NotApplicable };

std::string to_string(ClaimStatus s);

// One verified statement: an expected integer against a computed one, with a
// literature locus for where the expected value comes from.
struct Claim {
    std::string id;
    std::string locus;
    int64_t expected = 0;
    int64_t computed = 0;
    ClaimStatus status = ClaimStatus::Pass;
    std::string note;

    static Claim equal(std::string id, std::string locus, int64_t expected, int64_t computed,
                       std::string note = "");
    static Claim warn_only(std::string id, std::string locus, int64_t expected,
                           int64_t computed, std::string note = "");
};

bool all_pass(const std::vector<Claim>& claims);  // warnings do not fail

// Reference values for a Cartan family over F_p.
struct FamilyExpectations {
    size_t dim = 0;
    size_t mu = 0;
    size_t rank = 0;
    bool simple = false;  // nonzero-weight dimensions equal + root-space identity apply
    std::string rank_locus;
    std::string mu_locus;
    std::string dim_locus;
};

FamilyExpectations family_expectations(const FamilySpec& spec);

struct InvariantReport {
    FamilySpec spec;
    size_t dim = 0;
    size_t mu_reference = 0;
    size_t mu_search_dim = 0;
    size_t rank = 0;
    size_t dim_tor = 0;
    std::optional<size_t> root_space_dim;  // common nonzero-weight dimension
    bool self_centralizing = false;
    std::vector<Claim> claims;

    bool all_pass() const { return rla::all_pass(claims); }
};

struct ReportOptions {
    uint64_t seed = 0;
    size_t search_budget = 200;
    bool run_search = true;
};

InvariantReport invariant_report(const FamilySpec& spec, const ReportOptions& opts = {});
// Same report against an already-built algebra and torus (used by the CLI on
// loaded files; bit-identical to the in-process computation).
InvariantReport invariant_report_for(const Algebra& g, const Torus& torus,
                                     const FamilySpec& spec, const ReportOptions& opts = {});

// Checks, over a p-ideal n of g with a maximal torus t:
//   mu(g) = mu(n) + mu(g/n)
//   t . n and (t+n)/n are maximal tori of n and g/n
//   rk(g) <= rk(n) + rk(g/n)
//   rk(g) = rk(t+n) + rk(g/n) - mu(g/n)
//   and, for p-nilpotent g/n: mu(g) = mu(n), rk(g) = rk(n) + dim g/n.
// mu(n) comes from mu_n_reference or, when the scan is feasible, from the
// brute-force oracle; otherwise PreconditionUnverifiable.
struct DecompositionOptions {
    std::optional<size_t> mu_n_reference;
    std::string label;  // claim id prefix
    uint64_t seed = 0;
};

struct DecompositionReport {
    std::vector<Claim> claims;
    size_t mu_g = 0, mu_n = 0, mu_q = 0;
    size_t rk_g = 0, rk_n = 0, rk_q = 0, rk_tn = 0;
    bool quotient_p_nilpotent = false;

    bool all_pass() const { return rla::all_pass(claims); }
};

DecompositionReport verify_decomposition_theorems(const Algebra& g, const Ideal& n,
                                                  const Torus& t,
                                                  const DecompositionOptions& opts = {});

}  // namespace rla
