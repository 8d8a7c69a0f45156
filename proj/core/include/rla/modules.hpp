#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rla/algebra.hpp"

namespace rla {

// A restricted module: matrices rho(b_i) compatible with brackets and p-th
// powers. Compatibility is machine-checked exactly on construction.
struct RestrictedModule {
    Algebra algebra;
    size_t dim_v = 0;
    std::vector<FpMatrix> action;  // one matrix per basis element

    FpMatrix action_of(const FpVec& coords) const;
};

RestrictedModule check_restricted_module(const Algebra& g, std::vector<FpMatrix> matrices);

// Adjoint module of g.
RestrictedModule adjoint_module(const Algebra& g);

// W(1) acting on A(1) as densities of weight -lambda:
// (f d).g = f g' - lambda f' g. Construction passes check_restricted_module
// for every lambda in F_p; composition factors follow the dimension table
// 1, p-1 (lambda = 0), p (middle), p-1, 1 (lambda = p-1).
RestrictedModule density_module(uint32_t p, uint32_t lambda);
// The W(1) the density modules act for (basis d, xd, ..., x^(p-1) d).
Algebra density_module_algebra(uint32_t p);

// Smallest action-invariant subspace containing the vectors (canonical rows).
std::vector<FpVec> spin(const RestrictedModule& v, const std::vector<FpVec>& vectors);

struct CompositionData {
    std::vector<size_t> factor_dims;      // series order, submodule first
    bool all_trivial = false;             // every factor has dimension 1
    std::vector<std::vector<FpVec>> series;  // proper submodule chain (ambient rows)
};

// Composition factors by repeated submodule search: spinning kernel vectors of
// random action elements, then standard basis vectors, then the exhaustive
// scan over 1-dimensional subspaces while (p^dim - 1)/(p - 1) <= 10^5.
// Throws Inconclusive when simplicity cannot be certified.
CompositionData composition_factors(const RestrictedModule& v, uint64_t seed);

// {x : x.V = 0} as a verified p-ideal.
Ideal annihilator(const RestrictedModule& v);

// g = span{b^[p]} + [g, g] (Jacobson defects lie in the derived algebra, so
// the basis span suffices).
bool perfect_p_criterion(const Algebra& g);

enum class TrivialFactorOutcome {
    HypothesisNotMet,   // dim V >= p^mu - 1: the bound does not apply
    TrivialFactors,     // all composition factors are one-dimensional
    TrivialModule,      // additionally rho == 0 (perfect p-criterion route)
    Violated            // factors contradict the bound (build-breaking)
};

struct TrivialFactorVerdict {
    TrivialFactorOutcome outcome;
    size_t dim_v = 0;
    size_t bound = 0;        // p^mu - 1
    bool stabilizer_full = false;
    std::string stabilizer_citation;
    bool perfect = false;
    std::vector<size_t> factor_dims;
};

// stabilizer_full is a literature-sourced hypothesis supplied by the caller;
// the verdict records the citation string alongside what was checked.
TrivialFactorVerdict trivial_factor_check(const RestrictedModule& v, size_t mu_reference,
                                          bool stabilizer_full, const std::string& citation,
                                          uint64_t seed);

struct SplitVerdict {
    bool h_simple = false;
    bool hypothesis_met = false;  // codim < p^mu(h) - 1
    bool is_ideal = false;
    bool direct_sum = false;  // g = C_g(h) (+) h with [C, h] = 0
    size_t centralizer_dim = 0;
    Algebra centralizer;
};

// h is a subalgebra handle with parent g. Checks simplicity of h, treats g/h
// as an h-module for the ideal criterion, and verifies g = C_g(h) (+) h.
SplitVerdict split_off_simple_ideal(const Algebra& g, const Algebra& h, size_t mu_h_reference,
                                    uint64_t seed);

}  // namespace rla
