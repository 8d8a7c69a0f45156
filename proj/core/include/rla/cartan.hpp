#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rla/algebra.hpp"

namespace rla {

enum class Family { W, S, H, Hprime, Kpp, K, P };

std::string family_token(Family f);
std::optional<Family> parse_family_token(const std::string& token);

// Size carries n for W/S/K''/K, 2r for H/H'/P.
struct FamilySpec {
    Family family = Family::W;
    uint32_t size = 1;
    uint32_t p = 3;

    uint32_t r() const { return size / 2; }  // H/H'/P
    uint32_t contact_r() const { return (size - 1) / 2; }

    std::string name() const;      // e.g. "K''(3)"
    std::string display() const;   // e.g. "K''(3)@p3"
    void validate() const;         // throws std::invalid_argument
};

std::optional<FamilySpec> parse_spec_name(const std::string& name, uint32_t p);

// Jacobson-Witt algebra W(n) = Der A(n), basis {x^a d_i}, dim n p^n.
Algebra build_W(uint32_t n, uint32_t p);

// Special algebra S(n): derived subalgebra of the divergence-zero derivations,
// rebased as a root algebra; dim (n-1)(p^n - 1).
Algebra build_S(uint32_t n, uint32_t p);

struct HFamily {
    Algebra hprime;  // image of D_H, dim p^2r - 1
    Algebra h;       // derived subalgebra, dim p^2r - 2
};
HFamily build_H_family(uint32_t r, uint32_t p);

struct KFamily {
    Algebra kpp;  // K''(n) = image of D_K, dim p^n
    Algebra k;    // derived subalgebra when p | n+3, otherwise K''(n) itself
};
KFamily build_K_family(uint32_t n, uint32_t p);

// Poisson algebra P(2r) realized as the centralizer of D_K(1+x_n) in K''(2r+1).
Algebra build_P(uint32_t r, uint32_t p);

Algebra build_family(const FamilySpec& spec);

// The Hamiltonian map D_H(f) = sum_{i<=r} (d_i(f) d_{i+r} - d_{i+r}(f) d_i).
Derivation hamiltonian_derivation(const TruncPoly& f);

// The contact map D_K : A(n) -> W(n), n = 2r+1 odd, in the standard
// normalization: with i' = i+-r and sigma(i) = +-1,
//   D_K(f) = sum_i (x_i d_n(f) + sigma(i') d_{i'}(f)) d_i
//          + (2 f - sum_i x_i d_i(f)) d_n.
Derivation contact_derivation(const TruncPoly& f);

// Unique h with D_K(h) = [D_K(f), D_K(g)]; D_K is injective.
TruncPoly contact_bracket(const TruncPoly& f, const TruncPoly& g);

struct RegisteredTorus {
    FamilySpec spec;
    std::vector<TruncPoly> generator_polys;  // empty for W/S (generators are not D_K/D_H images)
    std::vector<FpVec> generator_coords;     // in the algebra's own basis
    std::string citation;
    size_t mu_reference = 0;
};

// The catalog torus of maximal dimension for the given family, with the
// literature mu value. Generators are machine-checked to lie in the algebra.
RegisteredTorus registered_torus(const FamilySpec& spec, const Algebra& algebra);

}  // namespace rla
