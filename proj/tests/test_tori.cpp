#include <doctest.h>

#include <algorithm>
#include <random>

#include "rla/tori.hpp"

using namespace rla;

namespace {

Algebra w1_p3() { return build_W(1, 3); }

FpVec rand_coords(std::mt19937_64& rng, size_t d, uint32_t p) {
    FpVec v(d);
    for (auto& c : v) c = static_cast<uint32_t>(rng() % p);
    return v;
}

}  // namespace

TEST_CASE("toral elements of W(1)@p3") {
    Algebra g = w1_p3();
    CHECK(is_toral(g.element({0, 1, 0})));   // xd
    CHECK(is_toral(g.element({1, 1, 0})));   // (1+x)d
    CHECK(!is_toral(g.element({1, 0, 0})));  // d
    CHECK(!is_toral(g.element({0, 0, 1})));  // x^2 d
}

TEST_CASE("semisimple part") {
    Algebra g = w1_p3();
    CHECK(semisimple_part(g.element({0, 1, 0})).coords == FpVec{0, 1, 0});
    CHECK(semisimple_part(g.element({1, 0, 0})).coords == FpVec{0, 0, 0});
    CHECK(semisimple_part(g.element({1, 1, 0})).coords == FpVec{1, 1, 0});

    std::mt19937_64 rng(5);
    for (int it = 0; it < 40; ++it) {
        Element x = g.element(rand_coords(rng, 3, 3));
        Element s = semisimple_part(x);
        // commutes with x
        CHECK(vec_is_zero(g.bracket_coords(x.coords, s.coords)));
        // s is fixed by some iterate of the p-map
        FpVec cur = s.coords;
        bool cycles = false;
        for (int i = 0; i < 30; ++i) {
            cur = g.p_power_coords(cur);
            if (cur == s.coords) {
                cycles = true;
                break;
            }
        }
        CHECK(cycles);
        // x - s is p-nilpotent
        FpVec diff = vec_sub(x.coords, s.coords, 3);
        for (int i = 0; i < 30 && !vec_is_zero(diff); ++i) diff = g.p_power_coords(diff);
        CHECK(vec_is_zero(diff));
    }
}

TEST_CASE("verify_torus outcomes") {
    Algebra g = w1_p3();
    Torus t = verify_torus(g, {g.element({0, 1, 0})}, TorusProvenance::user, 1);
    CHECK(t.dim() == 1);

    CHECK_THROWS_AS(verify_torus(g, {g.element({1, 0, 0})}, TorusProvenance::user, {}),
                    NotToralError);
    CHECK_THROWS_AS(
        verify_torus(g, {g.element({0, 1, 0}), g.element({0, 2, 0})}, TorusProvenance::user, {}),
        DependentTorusError);
    // xd and (1+x)d are both toral but do not commute
    CHECK_THROWS_AS(
        verify_torus(g, {g.element({0, 1, 0}), g.element({1, 1, 0})}, TorusProvenance::user, {}),
        NotCommutingError);
}

TEST_CASE("rank via registered tori") {
    Algebra g = w1_p3();
    Torus t = registered_torus_of(FamilySpec{Family::W, 1, 3}, g);
    CHECK(t.mu_reference == 1);
    CHECK(rank_via_torus(g, t) == 1);

    Torus anon = verify_torus(g, {g.element({0, 1, 0})}, TorusProvenance::user, {});
    CHECK_THROWS_AS(rank_via_torus(g, anon), std::invalid_argument);
}

TEST_CASE("Premet invariance in W(1)@p3") {
    Algebra g = w1_p3();
    Torus t1 = verify_torus(g, {g.element({0, 1, 0})}, TorusProvenance::user, 1);
    Torus t2 = verify_torus(g, {g.element({1, 1, 0})}, TorusProvenance::user, 1);
    CHECK(rank_via_torus(g, t1) == rank_via_torus(g, t2));
}

TEST_CASE("weight decomposition of W(1)@p3") {
    Algebra g = w1_p3();
    Torus t = registered_torus_of(FamilySpec{Family::W, 1, 3}, g);
    WeightDecomposition wd = adjoint_weight_decomposition(g, t);
    REQUIRE(wd.spaces.size() == 3);
    CHECK(wd.total_dim == 3);
    CHECK(wd.zero_weight_dim() == 1);
    CHECK(wd.common_nonzero_dim() == 1);

    // oracle: eigenspaces of ad(xd) directly
    FpMatrix ad = g.ad_matrix(FpVec{0, 1, 0});
    CHECK(eigenspace(ad, 0).size() == 1);
    CHECK(eigenspace(ad, 1).size() == 1);
    CHECK(eigenspace(ad, 2).size() == 1);
    // the weight-1 space is spanned by x^2 d
    auto e1 = eigenspace(ad, 1);
    CHECK(e1[0] == FpVec{0, 0, 1});

    CHECK_THROWS_AS(weight_decomposition({g.ad_matrix(FpVec{1, 0, 0})}, 3),
                    NotSemisimpleActionError);
}

TEST_CASE("weight decomposition of H(2)@p3") {
    FamilySpec spec{Family::H, 2, 3};
    Algebra h = build_family(spec);
    Torus t = registered_torus_of(spec, h);
    WeightDecomposition wd = adjoint_weight_decomposition(h, t);
    CHECK(wd.total_dim == 7);
    CHECK(wd.zero_weight_dim() == 1);
    REQUIRE(wd.spaces.size() == 3);
    CHECK(wd.common_nonzero_dim() == 3);  // 7 = 1 + 2 * 3
}

TEST_CASE("weight decomposition of K''(3)@p5") {
    FamilySpec spec{Family::Kpp, 3, 5};
    Algebra g = build_family(spec);
    Torus t = registered_torus_of(spec, g);
    WeightDecomposition wd = adjoint_weight_decomposition(g, t);
    CHECK(wd.total_dim == 125);
    CHECK(wd.zero_weight_dim() == 5);
    CHECK(wd.spaces.size() == 25);
    CHECK(wd.common_nonzero_dim() == 5);  // 125 = 5 + 24 * 5
}

TEST_CASE("brute force oracles on W(1)@p3") {
    Algebra g = w1_p3();
    std::vector<Element> torals = brute_force_toral(g);
    auto has = [&](const FpVec& v) {
        return std::any_of(torals.begin(), torals.end(),
                           [&](const Element& e) { return e.coords == v; });
    };
    CHECK(has(FpVec{0, 1, 0}));
    CHECK(has(FpVec{1, 1, 0}));
    CHECK(!has(FpVec{1, 0, 0}));
    CHECK(!has(FpVec{0, 0, 1}));

    CHECK(brute_force_mu(g, 2) == 1);  // no 2-torus in W(1)
    CHECK_THROWS_AS(brute_force_mu(g, 3), TooLargeError);
}

TEST_CASE("brute force mu of H(2)@p3 is 1") {
    Algebra h = build_family(FamilySpec{Family::H, 2, 3});
    CHECK(brute_force_mu(h, 2) == 1);
}

TEST_CASE("brute force on a toral line") {
    FpMatrix toral(3, 1, 1);
    toral.set(0, 0, 1);
    Algebra k = Algebra::from_matrices(3, {toral}, {"t"}, "k_toral");
    CHECK(brute_force_mu(k, 2) == 1);

    Algebra big = build_family(FamilySpec{Family::K, 3, 5});
    CHECK_THROWS_AS(brute_force_toral(big), TooLargeError);
}

TEST_CASE("mu search") {
    Algebra g = w1_p3();
    Torus found = mu_search(g, 0, 50);
    CHECK(found.dim() == 1);
    CHECK(found.provenance == TorusProvenance::searched);

    // search from several seeds stays within the oracle bound
    for (uint64_t seed : {1ull, 2ull, 3ull}) CHECK(mu_search(g, seed, 50).dim() <= 1);

    // zero algebra
    std::vector<FpVec> all;
    for (size_t i = 0; i < g.dim(); ++i) {
        FpVec e(g.dim(), 0);
        e[i] = 1;
        all.push_back(e);
    }
    Algebra zero = g.quotient(g.ideal(all), "0");
    CHECK(mu_search(zero, 0, 10).dim() == 0);

    Algebra kpp = build_family(FamilySpec{Family::Kpp, 3, 3});
    Torus kt = mu_search(kpp, 0, 200);
    CHECK(kt.dim() == 2);  // reaches the reference mu within the budget
}

TEST_CASE("Cartan subalgebra test") {
    Algebra g = w1_p3();
    Algebra c = g.centralizer({g.element({0, 1, 0})});
    CHECK(is_cartan_subalgebra(g, c));

    std::vector<FpVec> all;
    for (size_t i = 0; i < g.dim(); ++i) {
        FpVec e(g.dim(), 0);
        e[i] = 1;
        all.push_back(e);
    }
    Algebra self = g.subalgebra(all, "whole");
    CHECK(!is_cartan_subalgebra(g, self));  // not nilpotent

    Algebra zero = g.subalgebra({}, "zero");
    CHECK(!is_cartan_subalgebra(g, zero));  // not self-normalizing
}
