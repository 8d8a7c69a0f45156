#include "rla/tori.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace rla {

namespace {

uint64_t rnd_below(std::mt19937_64& rng, uint64_t n) {
    // unbiased and stdlib-independent, so seeded runs reproduce everywhere
    uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    while (true) {
        uint64_t v = rng();
        if (v < lim) return v % n;
    }
}

FpVec random_coords(std::mt19937_64& rng, size_t dim, uint32_t p) {
    FpVec v(dim);
    for (auto& c : v) c = static_cast<uint32_t>(rnd_below(rng, p));
    return v;
}

}  // namespace

bool is_toral(const Element& x) {
    return x.algebra.p_power_coords(x.coords) == x.coords;
}

Element semisimple_part(const Element& x) {
    const Algebra& g = x.algebra;
    const size_t cap = 10 * std::max<size_t>(g.realization_dim(), 4);
    std::vector<FpVec> seq{x.coords};
    std::map<FpVec, size_t> seen{{x.coords, 0}};
    size_t entry = 0, period = 0;
    while (true) {
        FpVec next = g.p_power_coords(seq.back());
        auto it = seen.find(next);
        if (it != seen.end()) {
            entry = it->second;
            period = seq.size() - entry;
            break;
        }
        if (seq.size() > cap)
            throw AlgebraError("semisimple_part: p-power sequence exceeded iteration cap");
        seen.emplace(next, seq.size());
        seq.push_back(std::move(next));
    }
    size_t e = entry == 0 ? 0 : period * ((entry + period - 1) / period);
    return g.element(seq[e]);
}

Torus verify_torus(const Algebra& g, std::vector<Element> elements, TorusProvenance provenance,
                   std::optional<size_t> mu_reference) {
    const uint32_t p = g.p();
    std::vector<FpVec> rows;
    for (const auto& e : elements) {
        if (!e.algebra.same(g)) throw MixedAlgebraError("verify_torus: foreign element");
        rows.push_back(e.coords);
    }
    SpanSolver span(p, rows, g.dim());
    if (!span.rows_independent())
        throw DependentTorusError("verify_torus: generators are linearly dependent");
    for (size_t i = 0; i < elements.size(); ++i)
        for (size_t j = i + 1; j < elements.size(); ++j)
            if (!vec_is_zero(g.bracket_coords(elements[i].coords, elements[j].coords)))
                throw NotCommutingError("verify_torus: generators " + std::to_string(i) +
                                        " and " + std::to_string(j) + " do not commute");
    for (size_t i = 0; i < elements.size(); ++i)
        if (!is_toral(elements[i]))
            throw NotToralError("verify_torus: generator " + std::to_string(i) +
                                " is not toral");

    const size_t d = elements.size();
    auto check_combo = [&](const FpVec& combo) {
        FpVec coords(g.dim(), 0);
        for (size_t i = 0; i < d; ++i)
            if (combo[i]) vec_add_scaled(coords, elements[i].coords, combo[i], p);
        if (g.p_power_coords(coords) != coords)
            throw NotToralError("verify_torus: a combination of generators is not toral");
    };
    double count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    if (count <= 1e5) {
        FpVec combo(d, 0);
        while (true) {
            check_combo(combo);
            size_t pos = 0;
            while (pos < d && ++combo[pos] == p) combo[pos++] = 0;
            if (pos == d) break;
        }
    } else {
        std::mt19937_64 rng(0xC0FFEE);
        for (int it = 0; it < 10000; ++it) check_combo(random_coords(rng, d, p));
    }
    return Torus{g, std::move(elements), provenance, mu_reference};
}

Torus registered_torus_of(const FamilySpec& spec, const Algebra& g) {
    RegisteredTorus reg = registered_torus(spec, g);
    std::vector<Element> elems;
    elems.reserve(reg.generator_coords.size());
    for (auto& c : reg.generator_coords) elems.push_back(g.element(c));
    return verify_torus(g, std::move(elems), TorusProvenance::registered, reg.mu_reference);
}

Algebra torus_centralizer(const Algebra& g, const Torus& t) {
    return g.centralizer(t.basis, g.name() + ".cent(torus)");
}

size_t rank_via_torus(const Algebra& g, const Torus& t) {
    if (!t.algebra.same(g)) throw MixedAlgebraError("rank_via_torus: foreign torus");
    if (!t.mu_reference)
        throw std::invalid_argument(
            "rank_via_torus: torus carries no reference mu; rank needs a maximal torus");
    return torus_centralizer(g, t).dim();
}

std::optional<size_t> WeightDecomposition::common_nonzero_dim() const {
    std::optional<size_t> d;
    for (size_t i = 0; i < spaces.size(); ++i) {
        if (i == zero_space_index) continue;
        if (!d)
            d = spaces[i].basis.size();
        else if (*d != spaces[i].basis.size())
            return std::nullopt;
    }
    return d;
}

WeightDecomposition weight_decomposition(const std::vector<FpMatrix>& actions, uint32_t p) {
    if (actions.empty()) throw std::invalid_argument("weight_decomposition: empty action list");
    const size_t n = actions.front().rows();
    for (const auto& m : actions) {
        if (m.rows() != n || m.cols() != n)
            throw std::invalid_argument("weight_decomposition: ragged actions");
        if (!(mat_p_power(m) == m))
            throw NotSemisimpleActionError(
                "weight_decomposition: action matrix fails M^p = M (input not toral)");
    }

    struct Piece {
        FpVec weight;
        std::vector<FpVec> basis;
    };
    std::vector<Piece> pieces;
    {
        std::vector<FpVec> full;
        for (size_t i = 0; i < n; ++i) {
            FpVec e(n, 0);
            e[i] = 1;
            full.push_back(std::move(e));
        }
        pieces.push_back({FpVec{}, std::move(full)});
    }

    for (const auto& m : actions) {
        std::vector<Piece> next;
        for (auto& piece : pieces) {
            const size_t k = piece.basis.size();
            SpanSolver span(p, piece.basis, n);
            // restriction of the action to the invariant piece
            FpMatrix restricted(p, k, k);
            for (size_t i = 0; i < k; ++i) {
                auto sol = span.solve(m.apply(piece.basis[i]));
                if (!sol)
                    throw AlgebraError("weight_decomposition: piece is not action-invariant");
                for (size_t rr = 0; rr < k; ++rr) restricted.set(rr, i, (*sol)[rr]);
            }
            // eigenvalues lie in F_p because M^p = M
            for (uint32_t c = 0; c < p; ++c) {
                auto eig = eigenspace(restricted, c);
                if (eig.empty()) continue;
                Piece sub;
                sub.weight = piece.weight;
                sub.weight.push_back(c);
                for (const auto& combo : eig) {
                    FpVec v(n, 0);
                    for (size_t i = 0; i < k; ++i)
                        if (combo[i]) vec_add_scaled(v, piece.basis[i], combo[i], p);
                    sub.basis.push_back(std::move(v));
                }
                next.push_back(std::move(sub));
            }
        }
        pieces = std::move(next);
    }

    std::sort(pieces.begin(), pieces.end(),
              [](const Piece& a, const Piece& b) { return a.weight < b.weight; });

    WeightDecomposition out;
    out.total_dim = 0;
    for (auto& piece : pieces) {
        WeightSpace ws;
        ws.weight = std::move(piece.weight);
        ws.basis = canonical_span(p, piece.basis, n);
        ws.is_zero_weight = vec_is_zero(ws.weight);
        out.total_dim += ws.basis.size();
        if (ws.is_zero_weight) out.zero_space_index = out.spaces.size();
        out.spaces.push_back(std::move(ws));
    }
    return out;
}

WeightDecomposition adjoint_weight_decomposition(const Algebra& g, const Torus& t) {
    std::vector<FpMatrix> actions;
    actions.reserve(t.basis.size());
    for (const auto& e : t.basis) actions.push_back(g.ad_matrix(e.coords));
    return weight_decomposition(actions, g.p());
}

std::vector<Element> brute_force_toral(const Algebra& g) {
    const uint32_t p = g.p();
    const size_t d = g.dim();
    double total = 1;
    for (size_t i = 0; i < d; ++i) total *= p;
    if (total > 1e7)
        throw TooLargeError("brute_force_toral: p^dim exceeds the enumeration bound 10^7");

    std::vector<Element> out;
    FpVec coords(d, 0);
    while (true) {
        size_t pos = 0;
        while (pos < d && ++coords[pos] == p) coords[pos++] = 0;
        if (pos == d) break;
        if (g.p_power_coords(coords) == coords) out.push_back(g.element(coords));
    }
    return out;
}

size_t brute_force_mu(const Algebra& g, size_t cap) {
    if (cap > 2) throw TooLargeError("brute_force_mu: torus-dimension cap is 2");
    if (cap == 0 || g.dim() == 0) return 0;
    std::vector<Element> torals = brute_force_toral(g);
    // projective representatives: first nonzero coordinate equal to 1
    std::vector<FpVec> reps;
    for (const auto& e : torals) {
        auto it = std::find_if(e.coords.begin(), e.coords.end(),
                               [](uint32_t c) { return c != 0; });
        if (it != e.coords.end() && *it == 1) reps.push_back(e.coords);
    }
    if (reps.empty()) return 0;
    if (cap == 1) return 1;
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j) {
            if (!vec_is_zero(g.bracket_coords(reps[i], reps[j]))) continue;
            SpanSolver span(g.p(), {reps[i], reps[j]}, g.dim());
            // two commuting independent toral elements span a 2-torus
            if (span.rows_independent()) return 2;
        }
    return 1;
}

Torus mu_search(const Algebra& g, uint64_t seed, size_t budget) {
    const uint32_t p = g.p();
    const size_t d = g.dim();
    std::mt19937_64 rng(seed);

    std::vector<FpVec> family;  // commuting toral rows, canonical
    Algebra cent = g;

    for (size_t it = 0; it < budget && cent.dim() > 0; ++it) {
        FpVec sub = random_coords(rng, cent.dim(), p);
        if (vec_is_zero(sub)) continue;
        FpVec x = cent.same(g) ? sub : cent.coords_to_parent(sub);
        Element s = semisimple_part(g.element(x));
        if (s.is_zero()) continue;

        // abelian p-closed span of the family and the p-power orbit of s
        std::vector<FpVec> gens = family;
        FpVec cur = s.coords;
        for (size_t guard = 0; guard <= d; ++guard) {
            if (std::find(gens.begin(), gens.end(), cur) != gens.end()) break;
            gens.push_back(cur);
            cur = g.p_power_coords(cur);
        }
        std::vector<FpVec> rows = canonical_span(p, gens, d);
        SpanSolver span(p, rows, d);
        const size_t k = rows.size();
        // fixed points of the p-map on the span are the toral combinations
        FpMatrix pminusid(p, k, k);
        bool ok = true;
        for (size_t i = 0; i < k && ok; ++i) {
            auto sol = span.solve(g.p_power_coords(rows[i]));
            if (!sol) {
                ok = false;  // span not p-closed: mixed sample, discard
                break;
            }
            for (size_t rr = 0; rr < k; ++rr)
                pminusid.set(rr, i, fp::sub((*sol)[rr], rr == i ? 1u : 0u, p));
        }
        if (!ok) continue;
        std::vector<FpVec> fixed = kernel_basis(pminusid);
        if (fixed.size() <= family.size()) continue;

        std::vector<FpVec> new_family;
        for (const auto& combo : fixed) {
            FpVec v(d, 0);
            for (size_t i = 0; i < k; ++i)
                if (combo[i]) vec_add_scaled(v, rows[i], combo[i], p);
            new_family.push_back(std::move(v));
        }
        new_family = canonical_span(p, new_family, d);
        if (new_family.size() <= family.size()) continue;
        family = std::move(new_family);
        std::vector<Element> elems;
        for (const auto& v : family) elems.push_back(g.element(v));
        cent = g.centralizer(elems);
    }

    std::vector<Element> elems;
    for (const auto& v : family) elems.push_back(g.element(v));
    return verify_torus(g, std::move(elems), TorusProvenance::searched, std::nullopt);
}

bool is_cartan_subalgebra(const Algebra& g, const Algebra& h) {
    if (!h.valid() || !h.parent().same(g))
        throw MixedAlgebraError("is_cartan_subalgebra: h must be a subalgebra of g");
    if (h.dim() == 0) return g.dim() == 0;
    if (!h.is_lie_nilpotent()) return false;

    // normalizer condition: [x, h_i] in span(h) for all generators
    const size_t d = g.dim(), k = h.dim();
    std::vector<FpVec> hrows;
    for (size_t i = 0; i < k; ++i) {
        FpVec e(k, 0);
        e[i] = 1;
        hrows.push_back(h.coords_to_parent(e));
    }
    SpanSolver span(g.p(), hrows, d);
    FpMatrix cond(g.p(), k * d, d);
    for (size_t j = 0; j < d; ++j) {
        FpVec ej(d, 0);
        ej[j] = 1;
        for (size_t i = 0; i < k; ++i) {
            FpVec w = g.bracket_coords(ej, hrows[i]);
            span.reduce_in_place(w);
            for (size_t rr = 0; rr < d; ++rr)
                if (w[rr]) cond.set(i * d + rr, j, w[rr]);
        }
    }
    return kernel_basis(cond).size() == k;
}

}  // namespace rla
