#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rla/algebra.hpp"
#include "rla/cartan.hpp"

namespace rla {

enum class TorusProvenance { registered, searched, user };

// A commuting family of toral elements (t^[p] = t) spanning an F_p-split
// torus inside a realized algebra.
struct Torus {
    Algebra algebra;
    std::vector<Element> basis;
    TorusProvenance provenance = TorusProvenance::user;
    std::optional<size_t> mu_reference;  // literature value this torus attains

    size_t dim() const { return basis.size(); }
};

bool is_toral(const Element& x);

// Jordan-Chevalley style split through the p-power sequence: iterate
// y <- y^[p] from x until the sequence cycles (entry k, period m) and return
// the term at the smallest index e >= k with m | e. The result s satisfies
// s^[p^m] = s, [x, s] = 0, and x - s is p-nilpotent.
Element semisimple_part(const Element& x);

// Checks independence, pairwise commutation and torality of the generators
// and of their F_p-combinations (exhaustive when p^d <= 10^5, else 10^4
// sampled combinations). Throws NotToral/NotCommuting/DependentTorus naming a
// witness.
Torus verify_torus(const Algebra& g, std::vector<Element> elements, TorusProvenance provenance,
                   std::optional<size_t> mu_reference);

// Catalog torus for the family, verified inside g.
Torus registered_torus_of(const FamilySpec& spec, const Algebra& g);

// dim C_g(t); valid as the rank when t has maximal dimension, which the
// caller asserts by supplying mu_reference.
size_t rank_via_torus(const Algebra& g, const Torus& t);
Algebra torus_centralizer(const Algebra& g, const Torus& t);

struct WeightSpace {
    FpVec weight;  // one entry per torus generator
    std::vector<FpVec> basis;
    bool is_zero_weight = false;
};

struct WeightDecomposition {
    std::vector<WeightSpace> spaces;  // sorted by weight tuple
    size_t total_dim = 0;
    size_t zero_space_index = SIZE_MAX;

    size_t zero_weight_dim() const {
        return zero_space_index == SIZE_MAX ? 0 : spaces[zero_space_index].basis.size();
    }
    // Common dimension of the nonzero-weight spaces, when they all agree.
    std::optional<size_t> common_nonzero_dim() const;
};

// Simultaneous eigenspace refinement for a family of commuting matrices with
// M^p = M (throws NotSemisimpleAction otherwise).
WeightDecomposition weight_decomposition(const std::vector<FpMatrix>& actions, uint32_t p);
WeightDecomposition adjoint_weight_decomposition(const Algebra& g, const Torus& t);

// All nonzero toral elements, by exhaustive scan (p^dim <= 10^7).
std::vector<Element> brute_force_toral(const Algebra& g);

// Largest d <= cap such that a d-dimensional torus exists; cap <= 2.
size_t brute_force_mu(const Algebra& g, size_t cap);

// Greedy randomized search: sample from the current centralizer, take
// semisimple parts, and keep any enlargement of the commuting toral span.
// Returns a verified torus; its dimension is a certified lower bound for mu.
Torus mu_search(const Algebra& g, uint64_t seed, size_t budget);

// h nilpotent and self-normalizing in g; h must be a subalgebra handle with
// parent g.
bool is_cartan_subalgebra(const Algebra& g, const Algebra& h);

}  // namespace rla
