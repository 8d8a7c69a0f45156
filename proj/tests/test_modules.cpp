#include <doctest.h>

#include "rla/modules.hpp"
#include "rla/tori.hpp"

using namespace rla;

TEST_CASE("restricted module checks") {
    Algebra w1 = build_W(1, 3);
    RestrictedModule adj = adjoint_module(w1);
    CHECK(adj.dim_v == 3);

    // natural action on A(1) is the defining realization
    std::vector<FpMatrix> natural;
    for (size_t i = 0; i < 3; ++i) {
        FpVec e(3, 0);
        e[i] = 1;
        natural.push_back(w1.realization_matrix(e));
    }
    RestrictedModule nat = check_restricted_module(w1, natural);
    CHECK(nat.dim_v == 3);

    // zeroing one action matrix breaks the bracket compatibility
    std::vector<FpMatrix> broken = natural;
    broken[1] = FpMatrix(3, 3, 3);
    CHECK_THROWS_AS(check_restricted_module(w1, broken), BracketMismatchError);

    std::vector<FpMatrix> badp = natural;
    badp[1] = badp[1].scaled(2);
    CHECK_THROWS(check_restricted_module(w1, badp));
}

TEST_CASE("density modules match the simple-module table") {
    // factor dimensions {1,p-1}, {p},...,{p}, {p-1,1}
    RestrictedModule v0 = density_module(5, 0);
    CompositionData cf0 = composition_factors(v0, 0);
    CHECK(cf0.factor_dims == std::vector<size_t>{1, 4});
    CHECK(!cf0.all_trivial);

    CompositionData cf1 = composition_factors(density_module(5, 1), 0);
    CHECK(cf1.factor_dims == std::vector<size_t>{5});

    CompositionData cf4 = composition_factors(density_module(5, 4), 0);
    CHECK(cf4.factor_dims == std::vector<size_t>{4, 1});

    CompositionData cf31 = composition_factors(density_module(3, 1), 0);
    CHECK(cf31.factor_dims == std::vector<size_t>{3});

    // multiset is seed-independent
    for (uint64_t seed : {1ull, 7ull, 42ull}) {
        CompositionData again = composition_factors(density_module(5, 0), seed);
        std::vector<size_t> dims = again.factor_dims;
        std::sort(dims.begin(), dims.end());
        CHECK(dims == std::vector<size_t>{1, 4});
    }
}

TEST_CASE("series witness is a chain of proper submodules") {
    RestrictedModule v = density_module(5, 0);
    CompositionData cf = composition_factors(v, 0);
    REQUIRE(cf.series.size() == cf.factor_dims.size() - 1);
    size_t prev = 0;
    for (const auto& sub : cf.series) {
        CHECK(sub.size() > prev);
        CHECK(sub.size() < v.dim_v);
        prev = sub.size();
        // invariance: spinning returns the same subspace
        CHECK(spin(v, sub).size() == sub.size());
    }
    size_t total = 0;
    for (size_t d : cf.factor_dims) total += d;
    CHECK(total == v.dim_v);
}

TEST_CASE("spin examples") {
    RestrictedModule v0 = density_module(5, 0);
    FpVec constant(5, 0);
    constant[0] = 1;
    CHECK(spin(v0, {constant}).size() == 1);

    RestrictedModule v1 = density_module(5, 1);
    FpVec e2(5, 0);
    e2[2] = 1;
    CHECK(spin(v1, {e2}).size() == 5);  // simple: everything spins up

    CHECK(spin(v1, {FpVec(5, 0)}).empty());
}

TEST_CASE("annihilators") {
    Algebra w1 = build_W(1, 3);
    CHECK(annihilator(adjoint_module(w1)).dim() == 0);

    // trivial 3-dimensional module: everything annihilates
    std::vector<FpMatrix> zeros(3, FpMatrix(3, 3, 3));
    RestrictedModule triv = check_restricted_module(w1, zeros);
    CHECK(annihilator(triv).dim() == 3);
    CompositionData cf = composition_factors(triv, 0);
    CHECK(cf.factor_dims == std::vector<size_t>{1, 1, 1});

    // W(1) (+) k_nil acting through the density module, zero on the summand
    FpMatrix nil(3, 2, 2);
    nil.set(0, 1, 1);
    Algebra knil = Algebra::from_matrices(3, {nil}, {"z"}, "k_nil");
    Algebra g = Algebra::direct_sum(w1, knil, "W(1)+k");
    RestrictedModule dens = density_module(3, 1);
    std::vector<FpMatrix> action = dens.action;
    action.push_back(FpMatrix(3, 3, 3));
    RestrictedModule ext = check_restricted_module(g, action);
    Ideal ann = annihilator(ext);
    REQUIRE(ann.dim() == 1);
    FpVec expect(4, 0);
    expect[3] = 1;
    CHECK(ann.basis_coords[0] == expect);
}

TEST_CASE("perfect p-criterion") {
    CHECK(perfect_p_criterion(build_W(1, 3)));

    FpMatrix nil(3, 2, 2);
    nil.set(0, 1, 1);
    CHECK(!perfect_p_criterion(Algebra::from_matrices(3, {nil}, {"z"}, "k_nil")));

    FpMatrix toral(3, 1, 1);
    toral.set(0, 0, 1);
    CHECK(perfect_p_criterion(Algebra::from_matrices(3, {toral}, {"t"}, "k_toral")));
}

TEST_CASE("trivial factor check") {
    Algebra w1 = build_W(1, 5);
    std::vector<FpMatrix> zeros(5, FpMatrix(5, 3, 3));
    RestrictedModule triv = check_restricted_module(w1, zeros);
    auto verdict = trivial_factor_check(triv, 1, true, "toral stabilizer catalog", 0);
    CHECK(verdict.outcome == TrivialFactorOutcome::TrivialModule);
    CHECK(verdict.bound == 4);
    CHECK(verdict.perfect);
    CHECK(verdict.factor_dims == std::vector<size_t>{1, 1, 1});

    // dim 5 >= p - 1 = 4: out of range of the bound
    auto nope = trivial_factor_check(density_module(5, 1), 1, true, "catalog", 0);
    CHECK(nope.outcome == TrivialFactorOutcome::HypothesisNotMet);

    // without the stabilizer hypothesis nothing is claimed
    auto off = trivial_factor_check(triv, 1, false, "", 0);
    CHECK(off.outcome == TrivialFactorOutcome::HypothesisNotMet);

    // adjoint of H(2)@p3: dim 7 >= 2
    Algebra h = build_family(FamilySpec{Family::H, 2, 3});
    auto big = trivial_factor_check(adjoint_module(h), 1, true, "catalog", 0);
    CHECK(big.outcome == TrivialFactorOutcome::HypothesisNotMet);
}

TEST_CASE("splitting off a simple summand") {
    Algebra w1 = build_W(1, 3);
    FpMatrix nil(3, 2, 2);
    nil.set(0, 1, 1);
    Algebra knil = Algebra::from_matrices(3, {nil}, {"z"}, "k_nil");
    Algebra g = Algebra::direct_sum(w1, knil, "W(1)+k");

    std::vector<FpVec> hrows;
    for (size_t i = 0; i < 3; ++i) {
        FpVec e(4, 0);
        e[i] = 1;
        hrows.push_back(e);
    }
    Algebra h = g.subalgebra(hrows, "W(1)");
    SplitVerdict v = split_off_simple_ideal(g, h, 1, 0);
    CHECK(v.h_simple);
    CHECK(v.hypothesis_met);  // codim 1 < p - 1 = 2
    CHECK(v.is_ideal);
    CHECK(v.direct_sum);
    CHECK(v.centralizer_dim == 1);

    // h = g: trivial split
    std::vector<FpVec> all;
    for (size_t i = 0; i < 3; ++i) {
        FpVec e(3, 0);
        e[i] = 1;
        all.push_back(e);
    }
    Algebra w1sub = w1.subalgebra(all, "W(1)self");
    SplitVerdict self = split_off_simple_ideal(w1, w1sub, 1, 0);
    CHECK(self.is_ideal);
    CHECK(self.direct_sum);
    CHECK(self.centralizer_dim == 0);

    // W(1) (+) W(1): outside the corollary bound, still split by computation
    Algebra gg = Algebra::direct_sum(w1, w1, "W+W");
    std::vector<FpVec> first;
    for (size_t i = 0; i < 3; ++i) {
        FpVec e(6, 0);
        e[i] = 1;
        first.push_back(e);
    }
    Algebra h2 = gg.subalgebra(first, "first");
    SplitVerdict v2 = split_off_simple_ideal(gg, h2, 1, 0);
    CHECK(v2.h_simple);
    CHECK(!v2.hypothesis_met);  // codim 3 >= 2
    CHECK(v2.is_ideal);
    CHECK(v2.direct_sum);
    CHECK(v2.centralizer_dim == 3);

    // a non-ideal subalgebra is rejected with a witness
    std::vector<FpVec> line{FpVec{0, 1, 0}};
    Algebra cart = w1.subalgebra(line, "xd-line");
    CHECK_THROWS_AS(split_off_simple_ideal(w1, cart, 1, 0), NotIdealError);
}
