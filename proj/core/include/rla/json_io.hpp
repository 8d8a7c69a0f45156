#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rla/algebra.hpp"
#include "rla/cartan.hpp"
#include "rla/modules.hpp"
#include "rla/reports.hpp"

namespace rla {

struct JsonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A faithful restricted matrix realization suitable for serialization; the
// identity realization when one exists, otherwise (for quotients) the adjoint
// when faithful, or multiplication on the restricted enveloping algebra when
// abelian. Throws when neither applies.
std::vector<FpMatrix> export_realization(const Algebra& g);

// {"p":..,"name":..,"dim":..,"labels":[..],"bracket":[[i,j,[[k,c],..]],..],
//  "pmap":[[i,[[k,c],..]],..],"realization":{"m":..,"matrices":[..]}}
// plus "torus":[[coords],..] when generators are given. Matrices are sparse
// [row,col,c] triples; brackets list i<j only; keys emit in fixed order.
std::string algebra_to_json(const Algebra& g, const std::vector<FpVec>& torus_coords = {});

struct AlgebraDocument {
    Algebra algebra;
    std::optional<FamilySpec> spec;   // parsed from the stored name
    std::vector<FpVec> torus_coords;  // empty when the file carries no torus
};

// Rebuilds the algebra from the stored realization (closure re-checked) and
// verifies the stored bracket/pmap tables against the recomputed ones.
AlgebraDocument algebra_from_json(const std::string& text);

// {"algebra":"<name>","coords":[..]}
std::string element_to_json(const Element& e);
FpVec element_coords_from_json(const std::string& text, const Algebra& g);

// {"algebra":"<name>@<p>","dimV":..,"action":[sparse matrices]}
std::string module_to_json(const RestrictedModule& m);
RestrictedModule module_from_json(const std::string& text, const Algebra& g);

std::string claims_to_json(const std::vector<Claim>& claims);
std::string invariant_report_to_json(const InvariantReport& report);

}  // namespace rla
