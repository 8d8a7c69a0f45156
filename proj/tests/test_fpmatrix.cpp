#include <doctest.h>

#include <random>

#include "rla/fpmatrix.hpp"

using namespace rla;

namespace {

FpMatrix from_grid(uint32_t p, const std::vector<std::vector<int>>& grid) {
    FpMatrix m(p, grid.size(), grid.front().size());
    for (size_t r = 0; r < grid.size(); ++r)
        for (size_t c = 0; c < grid[r].size(); ++c)
            m.set(r, c, fp::norm(grid[r][c], p));
    return m;
}

FpMatrix random_matrix(std::mt19937_64& rng, uint32_t p, size_t n) {
    FpMatrix m(p, n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) m.set(r, c, static_cast<uint32_t>(rng() % p));
    return m;
}

// independent oracle: p-1 successive multiplications
FpMatrix successive_power(const FpMatrix& m, uint32_t e) {
    FpMatrix acc = FpMatrix::identity(m.p(), m.rows());
    for (uint32_t i = 0; i < e; ++i) acc = acc * m;
    return acc;
}

}  // namespace

TEST_CASE("rref basics") {
    auto id3 = FpMatrix::identity(3, 3);
    auto r = rref(id3);
    CHECK(r.rank == 3);
    CHECK(r.pivots == std::vector<size_t>{0, 1, 2});
    CHECK(r.mat == id3);

    auto dep = from_grid(5, {{1, 2}, {2, 4}});
    CHECK(rref(dep).rank == 1);

    FpMatrix zero(3, 4, 4);
    CHECK(rref(zero).rank == 0);
}

TEST_CASE("rref is idempotent") {
    std::mt19937_64 rng(7);
    for (uint32_t p : {3u, 5u, 7u}) {
        for (int it = 0; it < 20; ++it) {
            auto m = random_matrix(rng, p, 5);
            auto r1 = rref(m);
            auto r2 = rref(r1.mat);
            CHECK(r1.mat == r2.mat);
            CHECK(r1.rank == r2.rank);
        }
    }
}

TEST_CASE("kernel_basis examples") {
    CHECK(kernel_basis(FpMatrix::identity(3, 3)).empty());
    CHECK(kernel_basis(FpMatrix(3, 2, 2)).size() == 2);

    auto m = from_grid(3, {{1, 1}, {2, 2}});
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    // proportional to (1,2): the canonical vector is (-1,1) = (2,1)
    CHECK(k[0] == FpVec{2, 1});
    CHECK(vec_is_zero(m.apply(k[0])));
}

TEST_CASE("kernel vectors annihilate and count cols - rank") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 30; ++it) {
        uint32_t p = it % 2 ? 3 : 5;
        auto m = random_matrix(rng, p, 6);
        auto k = kernel_basis(m);
        CHECK(k.size() == m.cols() - rref(m).rank);
        for (const auto& v : k) CHECK(vec_is_zero(m.apply(v)));
    }
}

TEST_CASE("coords_in_span examples") {
    FpVec e1{1, 0}, e2{0, 1};
    auto c = coords_in_span({e1, e2}, FpVec{1, 2}, 3);
    REQUIRE(c.has_value());
    CHECK(*c == FpVec{1, 2});

    CHECK(!coords_in_span({e1}, FpVec{0, 1}, 3).has_value());

    auto c2 = coords_in_span({FpVec{1, 1}}, FpVec{2, 2}, 5);
    REQUIRE(c2.has_value());
    CHECK(*c2 == FpVec{2});

    CHECK_THROWS_AS(coords_in_span({FpVec{1, 1}, FpVec{2, 2}}, FpVec{0, 0}, 3),
                    DependentBasisError);
}

TEST_CASE("coords_in_span recombines exactly") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 20; ++it) {
        uint32_t p = 7;
        std::vector<FpVec> basis;
        for (int i = 0; i < 3; ++i) {
            FpVec v(6);
            for (auto& x : v) x = static_cast<uint32_t>(rng() % p);
            basis.push_back(v);
        }
        SpanSolver span(p, basis, 6);
        if (!span.rows_independent()) continue;
        FpVec target(6, 0);
        FpVec expect_coeffs(3);
        for (size_t i = 0; i < 3; ++i) {
            expect_coeffs[i] = static_cast<uint32_t>(rng() % p);
            vec_add_scaled(target, basis[i], expect_coeffs[i], p);
        }
        auto c = coords_in_span(basis, target, p);
        REQUIRE(c.has_value());
        FpVec recombined(6, 0);
        for (size_t i = 0; i < 3; ++i) vec_add_scaled(recombined, basis[i], (*c)[i], p);
        CHECK(recombined == target);
        CHECK(*c == expect_coeffs);
    }
}

TEST_CASE("mat_p_power examples") {
    auto jordan = from_grid(3, {{0, 1}, {0, 0}});
    CHECK(mat_p_power(jordan).is_zero());

    auto diag = from_grid(3, {{1, 0}, {0, 2}});
    CHECK(mat_p_power(diag) == diag);

    // companion matrix of X^2 - 1; cube computed by the successive-product oracle
    auto comp = from_grid(3, {{0, 1}, {1, 0}});
    CHECK(successive_power(comp, 3) == comp);
    CHECK(mat_p_power(comp) == comp);

    CHECK_THROWS(mat_p_power(FpMatrix(3, 2, 3)));
}

TEST_CASE("mat_p_power equals successive products") {
    std::mt19937_64 rng(31);
    for (uint32_t p : {3u, 5u, 7u}) {
        for (int it = 0; it < 10; ++it) {
            auto m = random_matrix(rng, p, 5);
            CHECK(mat_p_power(m) == successive_power(m, p));
        }
    }
}

TEST_CASE("eigenspace examples") {
    auto diag = from_grid(3, {{1, 0}, {0, 2}});
    auto e1 = eigenspace(diag, 1);
    REQUIRE(e1.size() == 1);
    CHECK(e1[0] == FpVec{1, 0});

    CHECK(eigenspace(FpMatrix::identity(3, 2), 0).empty());
}

TEST_CASE("eigenspaces of a split semisimple matrix fill the space") {
    std::mt19937_64 rng(43);
    for (uint32_t p : {3u, 5u}) {
        for (int it = 0; it < 10; ++it) {
            // conjugated diagonal matrix: M^p = M by construction
            size_t n = 5;
            FpMatrix q(p, n, n);
            while (rref(q).rank < n) q = random_matrix(rng, p, n);
            // invert q through the solver
            std::vector<FpVec> rows;
            for (size_t i = 0; i < n; ++i) rows.push_back(q.row(i));
            SpanSolver span(p, rows, n);
            FpMatrix qinv(p, n, n);
            for (size_t i = 0; i < n; ++i) {
                FpVec e(n, 0);
                e[i] = 1;
                auto c = span.solve(e);
                REQUIRE(c.has_value());
                for (size_t r = 0; r < n; ++r) qinv.set(i, r, (*c)[r]);
            }
            FpMatrix d(p, n, n);
            for (size_t i = 0; i < n; ++i) d.set(i, i, static_cast<uint32_t>(rng() % p));
            // rows-as-vectors inversion gives q^T-style factors; the product
            // below is still p-semisimple, which is all the property needs
            FpMatrix m = qinv * d * q;
            if (!(mat_p_power(m) == m)) continue;
            size_t total = 0;
            for (uint32_t c = 0; c < p; ++c) total += eigenspace(m, c).size();
            CHECK(total == n);
        }
    }
}
