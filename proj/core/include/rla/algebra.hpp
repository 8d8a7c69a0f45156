#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rla/errors.hpp"
#include "rla/fpmatrix.hpp"
#include "rla/truncpoly.hpp"

namespace rla {

// Sparse coordinate vector: (basis index, nonzero coefficient), index-sorted.
using SparseVec = std::vector<std::pair<uint32_t, uint32_t>>;

SparseVec to_sparse(const FpVec& v);
FpVec from_sparse(const SparseVec& s, size_t dim);

namespace detail {
struct AlgebraImpl;
}

class Algebra;

struct Element;
struct Ideal;

// A restricted Lie algebra given by a concrete realization: a basis of
// matrices closed under commutator and associative p-th power, or a parent
// algebra plus lift/project maps (subalgebras, quotients). The p-map is never
// a stored formula; x^[p] is always an associative matrix power followed by a
// coordinate solve, routed through parents where needed.
//
// Handles are cheap shared references; all algebra state is immutable after
// construction, so concurrent use is safe.
class Algebra {
public:
    Algebra() = default;

    // Root constructors. Both verify, for every basis pair/element, that
    // brackets and p-th powers stay inside the span; the structure constants
    // computed during that check are retained.
    static Algebra from_matrices(uint32_t p, std::vector<FpMatrix> basis,
                                 std::vector<std::string> labels = {}, std::string name = "");
    static Algebra from_derivations(MonoCtx ctx, std::vector<Derivation> basis,
                                    std::vector<std::string> labels = {}, std::string name = "");
    static Algebra direct_sum(const Algebra& a, const Algebra& b, std::string name = "");

    bool valid() const { return impl_ != nullptr; }
    uint32_t p() const;
    size_t dim() const;
    const std::string& name() const;
    const std::vector<std::string>& labels() const;

    bool is_subalgebra() const;
    bool is_quotient() const;
    Algebra parent() const;  // invalid handle at the root

    // Ambient matrix size of the root realization.
    size_t realization_dim() const;
    bool has_matrix_realization() const;  // false below a quotient
    FpMatrix realization_matrix(const FpVec& coords) const;

    Element element(FpVec coords) const;
    Element element_sparse(const SparseVec& coords) const;
    Element zero_element() const;
    Element basis_element(size_t i) const;

    Element bracket(const Element& x, const Element& y) const;
    Element p_power(const Element& x) const;
    FpVec bracket_coords(const FpVec& x, const FpVec& y) const;
    FpVec p_power_coords(const FpVec& x) const;

    // [b_i, b_j] for i < j, in basis coordinates.
    const SparseVec& structure_constant(size_t i, size_t j) const;
    const SparseVec& pmap_entry(size_t i) const;  // b_i^[p]

    // Matrix of ad(x) on basis coordinates (columns are [x, b_j]).
    FpMatrix ad_matrix(const FpVec& coords) const;

    // Subalgebra <-> parent coordinate maps. For subalgebras the downward map
    // solves (and may fail); for quotients it projects (total).
    std::optional<FpVec> coords_from_parent(const FpVec& parent_coords) const;
    FpVec coords_to_parent(const FpVec& coords) const;
    // Through all parents up to the root realization.
    FpVec coords_to_root(const FpVec& coords) const;

    // Same algebra under a different display name (shares all state).
    Algebra renamed(std::string new_name) const;

    // Coordinates of a candidate realization-level object, if it lies in the
    // span of the basis. Routed through parents for subalgebras.
    std::optional<FpVec> solve_derivation(const Derivation& d) const;
    std::optional<FpVec> solve_matrix(const FpMatrix& m) const;

    // Closure-checked subalgebra spanned by the given coordinate rows.
    Algebra subalgebra(std::vector<FpVec> coords_rows, std::string name = "") const;
    Algebra centralizer(const std::vector<Element>& s, std::string name = "") const;
    Algebra derived_subalgebra(std::string name = "") const;
    Algebra center(std::string name = "") const;

    // Lower central series reaches zero.
    bool is_lie_nilpotent() const;

    // Lie-nilpotency combined with the p-power chain on the center; in a
    // nilpotent restricted algebra every toral element is central, so the
    // conjunction decides p-nilpotency.
    bool is_p_nilpotent() const;

    // Verifies [g, span] inside span; p-closure decides the is_p_ideal flag.
    Ideal ideal(std::vector<FpVec> coords_rows) const;
    Algebra quotient(const Ideal& n, std::string name = "") const;

    bool same(const Algebra& other) const { return impl_ == other.impl_; }

private:
    explicit Algebra(std::shared_ptr<const detail::AlgebraImpl> impl) : impl_(std::move(impl)) {}
    const detail::AlgebraImpl& impl() const;

    std::shared_ptr<const detail::AlgebraImpl> impl_;

    friend struct detail::AlgebraImpl;
};

struct Element {
    Algebra algebra;
    FpVec coords;

    bool is_zero() const { return vec_is_zero(coords); }
};

struct Ideal {
    Algebra algebra;
    std::vector<FpVec> basis_coords;  // canonical rref rows
    bool is_p_ideal = false;

    size_t dim() const { return basis_coords.size(); }
};

}  // namespace rla
