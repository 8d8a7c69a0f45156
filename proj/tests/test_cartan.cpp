#include <doctest.h>

#include <random>

#include "rla/cartan.hpp"

using namespace rla;

namespace {

TruncPoly mono(const MonoCtx& ctx, std::vector<uint32_t> exps, uint32_t c = 1) {
    return TruncPoly::monomial(ctx, exps, c);
}

TruncPoly random_poly(std::mt19937_64& rng, const MonoCtx& ctx, int terms) {
    TruncPoly f(ctx);
    for (int t = 0; t < terms; ++t)
        f.add_term(static_cast<uint32_t>(rng() % ctx.size()),
                   static_cast<uint32_t>(rng() % ctx.p));
    return f;
}

}  // namespace

TEST_CASE("family spec validation and names") {
    CHECK(FamilySpec{Family::Kpp, 3, 5}.name() == "K''(3)");
    CHECK(FamilySpec{Family::Hprime, 2, 3}.display() == "H'(2)@p3");
    CHECK_THROWS(FamilySpec{Family::K, 4, 5}.validate());
    CHECK_THROWS(FamilySpec{Family::S, 2, 3}.validate());
    CHECK_THROWS(FamilySpec{Family::H, 3, 3}.validate());
    CHECK_THROWS((FamilySpec{Family::W, 1, 4}.validate()));

    auto spec = parse_spec_name("K''(3)", 3);
    REQUIRE(spec.has_value());
    CHECK(spec->family == Family::Kpp);
    CHECK(spec->size == 3);
    CHECK(!parse_spec_name("Q(3)", 3).has_value());
}

TEST_CASE("W(n) dimensions") {
    CHECK(build_W(1, 3).dim() == 3);
    CHECK(build_W(2, 3).dim() == 18);
    CHECK(build_W(3, 5).dim() == 375);
}

TEST_CASE("W(1)@p3 structure matches the hand table") {
    Algebra w1 = build_W(1, 3);
    CHECK(w1.structure_constant(0, 1) == SparseVec{{0, 1}});
    CHECK(w1.structure_constant(0, 2) == SparseVec{{1, 2}});
    CHECK(w1.structure_constant(1, 2) == SparseVec{{2, 1}});
    CHECK(w1.pmap_entry(1) == SparseVec{{1, 1}});
}

TEST_CASE("S(n) divergence-free construction") {
    Algebra s3 = build_S(3, 3);
    CHECK(s3.dim() == 52);
    CHECK(s3.dim() == (3 - 1) * (27 - 1));

    MonoCtx ctx(3, 3);
    // div(x1 d1) = 1: not a member
    std::vector<TruncPoly> comps1(3, TruncPoly(ctx));
    comps1[0] = TruncPoly::variable(ctx, 0);
    CHECK(!s3.solve_derivation(Derivation(ctx, comps1)).has_value());
    // div(x1 d2) = 0 and it is a commutator of divergence-free fields
    std::vector<TruncPoly> comps2(3, TruncPoly(ctx));
    comps2[1] = TruncPoly::variable(ctx, 0);
    CHECK(s3.solve_derivation(Derivation(ctx, comps2)).has_value());

    CHECK(s3.derived_subalgebra().dim() == s3.dim());
}

TEST_CASE("Hamiltonian family") {
    for (uint32_t p : {3u, 5u}) {
        HFamily hf = build_H_family(1, p);
        CHECK(hf.hprime.dim() == p * p - 1);
        CHECK(hf.h.dim() == p * p - 2);
    }

    MonoCtx ctx(2, 3);
    CHECK(hamiltonian_derivation(TruncPoly::constant(ctx, 1)).is_zero());
    // D_H(x1 x2) = x2 d2 - x1 d1 under the fixed sign convention
    Derivation d = hamiltonian_derivation(mono(ctx, {1, 1}));
    CHECK(d.components()[0] == TruncPoly(ctx) - TruncPoly::variable(ctx, 0));
    CHECK(d.components()[1] == TruncPoly::variable(ctx, 1));
}

TEST_CASE("contact map basics") {
    MonoCtx ctx(3, 3);
    // D_K(1) = 2 d3
    Derivation d1 = contact_derivation(TruncPoly::constant(ctx, 1));
    CHECK(d1.components()[0].is_zero());
    CHECK(d1.components()[1].is_zero());
    CHECK(d1.components()[2] == TruncPoly::constant(ctx, 2));

    // D_K(x3) = x1 d1 + x2 d2 + 2 x3 d3 (the grading field)
    Derivation dx3 = contact_derivation(TruncPoly::variable(ctx, 2));
    CHECK(dx3.components()[0] == TruncPoly::variable(ctx, 0));
    CHECK(dx3.components()[1] == TruncPoly::variable(ctx, 1));
    CHECK(dx3.components()[2] == TruncPoly::variable(ctx, 2).scaled(2));

    CHECK_THROWS(contact_derivation(TruncPoly::constant(MonoCtx(2, 3), 1)));
}

TEST_CASE("K family dimensions over both congruence branches") {
    KFamily k33 = build_K_family(3, 3);  // 3 | n+3
    CHECK(k33.kpp.dim() == 27);
    CHECK(k33.k.dim() == 26);

    KFamily k35 = build_K_family(3, 5);  // 5 does not divide 6
    CHECK(k35.kpp.dim() == 125);
    CHECK(k35.k.dim() == 125);

    KFamily k53 = build_K_family(5, 3);  // 3 does not divide 8
    CHECK(k53.kpp.dim() == 243);
    CHECK(k53.k.dim() == 243);
}

TEST_CASE("contact bracket") {
    MonoCtx ctx5(3, 5);
    auto one = TruncPoly::constant(ctx5, 1);
    auto x3 = TruncPoly::variable(ctx5, 2);
    CHECK(contact_bracket(one, x3) == TruncPoly::constant(ctx5, 2));

    std::mt19937_64 rng(29);
    for (int it = 0; it < 8; ++it) {
        auto f = random_poly(rng, ctx5, 3);
        CHECK(contact_bracket(f, f).is_zero());
        auto g = random_poly(rng, ctx5, 3);
        CHECK(contact_bracket(f, g) == TruncPoly(ctx5) - contact_bracket(g, f));
    }
    // torus elements commute with their own powers
    auto t = mono(ctx5, {1, 1, 0});
    auto tpow = t;
    for (int j = 0; j < 3; ++j) {
        CHECK(contact_bracket(t, tpow).is_zero());
        tpow = tpow * t;
    }
    // Jacobi transported through the contact map
    for (int it = 0; it < 5; ++it) {
        auto f = random_poly(rng, ctx5, 2);
        auto g = random_poly(rng, ctx5, 2);
        auto h = random_poly(rng, ctx5, 2);
        auto s = contact_bracket(f, contact_bracket(g, h)) +
                 contact_bracket(g, contact_bracket(h, f)) +
                 contact_bracket(h, contact_bracket(f, g));
        CHECK(s.is_zero());
    }
}

TEST_CASE("Poisson centralizer realization") {
    Algebra p2 = build_P(1, 3);
    CHECK(p2.dim() == 9);
    CHECK(p2.is_subalgebra());
    CHECK(p2.parent().name() == "K''(3)");

    Algebra p2_5 = build_P(1, 5);
    CHECK(p2_5.dim() == 25);

    // contains D_K(1+x3) and that element is toral
    MonoCtx ctx(3, 3);
    TruncPoly shift = TruncPoly::constant(ctx, 1) + TruncPoly::variable(ctx, 2);
    auto coords = p2.solve_derivation(contact_derivation(shift));
    REQUIRE(coords.has_value());
    CHECK(p2.p_power_coords(*coords) == *coords);
}

TEST_CASE("registered tori across the catalog") {
    for (auto spec : {FamilySpec{Family::W, 1, 3}, FamilySpec{Family::W, 2, 3},
                      FamilySpec{Family::S, 3, 3}, FamilySpec{Family::H, 2, 3},
                      FamilySpec{Family::Hprime, 2, 3}, FamilySpec{Family::P, 2, 3},
                      FamilySpec{Family::Kpp, 3, 3}, FamilySpec{Family::K, 3, 3},
                      FamilySpec{Family::K, 3, 5}}) {
        CAPTURE(spec.display());
        Algebra g = build_family(spec);
        RegisteredTorus t = registered_torus(spec, g);
        CHECK(t.generator_coords.size() == t.mu_reference);
        for (const auto& c : t.generator_coords) CHECK(g.p_power_coords(c) == c);
        for (size_t i = 0; i < t.generator_coords.size(); ++i)
            for (size_t j = i + 1; j < t.generator_coords.size(); ++j)
                CHECK(vec_is_zero(
                    g.bracket_coords(t.generator_coords[i], t.generator_coords[j])));
    }
}

TEST_CASE("derived subalgebra of the contact family") {
    KFamily kf = build_K_family(3, 3);
    Algebra derived = kf.kpp.derived_subalgebra();
    CHECK(derived.dim() == 26);

    // the quotient K''/K is one-dimensional and p-nilpotent
    std::vector<FpVec> rows;
    for (size_t i = 0; i < derived.dim(); ++i) {
        FpVec e(derived.dim(), 0);
        e[i] = 1;
        rows.push_back(derived.coords_to_parent(e));
    }
    Ideal n = kf.kpp.ideal(rows);
    REQUIRE(n.is_p_ideal);
    Algebra q = kf.kpp.quotient(n, "K''(3)/K(3)");
    CHECK(q.dim() == 1);
    CHECK(q.is_p_nilpotent());
}
