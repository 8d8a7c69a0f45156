#include "rla/json_io.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace rla {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json sparse_matrix_json(const FpMatrix& m) {
    ordered_json triples = ordered_json::array();
    for (size_t r = 0; r < m.rows(); ++r)
        for (size_t c = 0; c < m.cols(); ++c)
            if (m(r, c)) triples.push_back({r, c, m(r, c)});
    return triples;
}

FpMatrix sparse_matrix_from_json(const ordered_json& j, uint32_t p, size_t m) {
    FpMatrix out(p, m, m);
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 3) throw JsonError("matrix triple must be [row,col,c]");
        size_t r = t[0].get<size_t>(), c = t[1].get<size_t>();
        uint32_t v = t[2].get<uint32_t>();
        if (r >= m || c >= m) throw JsonError("matrix triple out of range");
        if (v >= p) throw JsonError("matrix entry not reduced mod p");
        out.set(r, c, v);
    }
    return out;
}

ordered_json sparse_vec_json(const SparseVec& v) {
    ordered_json out = ordered_json::array();
    for (auto [k, c] : v) out.push_back({k, c});
    return out;
}

SparseVec sparse_vec_from_json(const ordered_json& j, size_t dim, uint32_t p) {
    SparseVec out;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2) throw JsonError("sparse entry must be [k,c]");
        uint32_t k = t[0].get<uint32_t>(), c = t[1].get<uint32_t>();
        if (k >= dim) throw JsonError("sparse entry index out of range");
        if (c >= p) throw JsonError("sparse entry not reduced mod p");
        out.emplace_back(k, c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Multiplication action of an abelian restricted algebra on its restricted
// enveloping algebra; faithful, commuting, and L_z^p = L_{z^[p]}.
std::vector<FpMatrix> abelian_enveloping_realization(const Algebra& g) {
    const uint32_t p = g.p();
    const uint32_t d = static_cast<uint32_t>(g.dim());
    MonoCtx ctx(d, p);

    // z_i * z^a with the straightening z_i^p = z_i^[p]; total degree drops on
    // every rewrite, so the recursion terminates.
    std::function<void(uint32_t, uint32_t, uint32_t, std::map<uint32_t, uint32_t>&)> mul_gen =
        [&](uint32_t i, uint32_t mono, uint32_t coeff, std::map<uint32_t, uint32_t>& acc) {
            auto e = ctx.decode(mono);
            if (e[i] + 1 < p) {
                e[i] += 1;
                uint32_t idx = ctx.encode(e);
                acc[idx] = fp::add(acc.count(idx) ? acc[idx] : 0, coeff, p);
                return;
            }
            // z_i^p z^rest = z_i^[p] z^rest
            e[i] = 0;
            uint32_t rest = ctx.encode(e);
            for (auto [j, c] : g.pmap_entry(i))
                mul_gen(j, rest, fp::mul(coeff, c, p), acc);
        };

    std::vector<FpMatrix> out;
    for (uint32_t i = 0; i < d; ++i) {
        FpMatrix m(p, ctx.size(), ctx.size());
        for (uint32_t a = 0; a < ctx.size(); ++a) {
            std::map<uint32_t, uint32_t> acc;
            mul_gen(i, a, 1, acc);
            for (auto [row, c] : acc)
                if (c) m.set(row, a, c);
        }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace

std::vector<FpMatrix> export_realization(const Algebra& g) {
    if (g.has_matrix_realization()) {
        std::vector<FpMatrix> out;
        for (size_t i = 0; i < g.dim(); ++i) {
            FpVec e(g.dim(), 0);
            e[i] = 1;
            out.push_back(g.realization_matrix(e));
        }
        return out;
    }
    // adjoint, when faithful
    std::vector<FpMatrix> ads;
    std::vector<FpVec> flat;
    for (size_t i = 0; i < g.dim(); ++i) {
        FpVec e(g.dim(), 0);
        e[i] = 1;
        ads.push_back(g.ad_matrix(e));
        flat.push_back(ads.back().data());
    }
    if (g.dim() > 0 && SpanSolver(g.p(), flat, g.dim() * g.dim()).rows_independent()) return ads;

    bool abelian = true;
    for (size_t j = 0; j < g.dim() && abelian; ++j)
        for (size_t i = 0; i < j && abelian; ++i)
            abelian = g.structure_constant(i, j).empty();
    if (abelian) return abelian_enveloping_realization(g);
    throw AlgebraError(
        "export_realization: quotient with central derived elements has no compact faithful "
        "realization here");
}

std::string algebra_to_json(const Algebra& g, const std::vector<FpVec>& torus_coords) {
    std::vector<FpMatrix> basis = export_realization(g);
    ordered_json j;
    j["p"] = g.p();
    j["name"] = g.name();
    j["dim"] = g.dim();
    j["labels"] = g.labels();
    ordered_json bracket = ordered_json::array();
    for (size_t jj = 0; jj < g.dim(); ++jj)
        for (size_t ii = 0; ii < jj; ++ii) {
            const auto& sc = g.structure_constant(ii, jj);
            if (!sc.empty()) bracket.push_back({ii, jj, sparse_vec_json(sc)});
        }
    j["bracket"] = std::move(bracket);
    ordered_json pmap = ordered_json::array();
    for (size_t i = 0; i < g.dim(); ++i) {
        const auto& pm = g.pmap_entry(i);
        if (!pm.empty()) pmap.push_back({i, sparse_vec_json(pm)});
    }
    j["pmap"] = std::move(pmap);
    ordered_json real;
    real["m"] = basis.empty() ? 0 : basis.front().rows();
    ordered_json mats = ordered_json::array();
    for (const auto& m : basis) mats.push_back(sparse_matrix_json(m));
    real["matrices"] = std::move(mats);
    j["realization"] = std::move(real);
    if (!torus_coords.empty()) {
        ordered_json torus = ordered_json::array();
        for (const auto& t : torus_coords) torus.push_back(t);
        j["torus"] = std::move(torus);
    }
    return j.dump(2) + "\n";
}

AlgebraDocument algebra_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw JsonError(std::string("algebra JSON parse failure: ") + e.what());
    }
    try {
        uint32_t p = j.at("p").get<uint32_t>();
        fp::check_modulus(p);
        std::string name = j.at("name").get<std::string>();
        size_t dim = j.at("dim").get<size_t>();
        std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
        if (labels.size() != dim) throw JsonError("labels length does not match dim");

        const auto& real = j.at("realization");
        size_t m = real.at("m").get<size_t>();
        const auto& mats = real.at("matrices");
        if (mats.size() != dim) throw JsonError("realization matrix count does not match dim");
        std::vector<FpMatrix> basis;
        basis.reserve(dim);
        for (const auto& mj : mats) basis.push_back(sparse_matrix_from_json(mj, p, m));

        // prefer the derivation fast path when the realization is one
        Algebra g;
        bool derivation_mode = false;
        size_t pw = 1;
        uint32_t nvars = 0;
        while (pw < m) {
            pw *= p;
            ++nvars;
        }
        if (pw == m && nvars >= 1) {
            MonoCtx ctx(nvars, p);
            std::vector<Derivation> ders;
            ders.reserve(dim);
            derivation_mode = true;
            for (const auto& b : basis) {
                auto d = derivation_from_matrix(ctx, b);
                if (!d) {
                    derivation_mode = false;
                    break;
                }
                ders.push_back(std::move(*d));
            }
            if (derivation_mode)
                g = Algebra::from_derivations(ctx, std::move(ders), labels, name);
        }
        if (!derivation_mode) g = Algebra::from_matrices(p, std::move(basis), labels, name);

        // stored tables must agree with the recomputed structure constants
        for (const auto& b : j.at("bracket")) {
            if (!b.is_array() || b.size() != 3) throw JsonError("bracket entry must be [i,j,sc]");
            size_t bi = b[0].get<size_t>(), bj = b[1].get<size_t>();
            if (bi >= bj || bj >= dim) throw JsonError("bracket entry indices invalid");
            if (sparse_vec_from_json(b[2], dim, p) != g.structure_constant(bi, bj))
                throw JsonError("stored bracket table disagrees with the realization");
        }
        size_t nonzero_brackets = 0;
        for (size_t jj = 0; jj < dim; ++jj)
            for (size_t ii = 0; ii < jj; ++ii)
                if (!g.structure_constant(ii, jj).empty()) ++nonzero_brackets;
        if (j.at("bracket").size() != nonzero_brackets)
            throw JsonError("stored bracket table is incomplete");

        size_t nonzero_pmaps = 0;
        for (size_t i = 0; i < dim; ++i)
            if (!g.pmap_entry(i).empty()) ++nonzero_pmaps;
        if (j.at("pmap").size() != nonzero_pmaps)
            throw JsonError("stored pmap table is incomplete");
        for (const auto& e : j.at("pmap")) {
            if (!e.is_array() || e.size() != 2) throw JsonError("pmap entry must be [i,sc]");
            size_t i = e[0].get<size_t>();
            if (i >= dim) throw JsonError("pmap entry index invalid");
            if (sparse_vec_from_json(e[1], dim, p) != g.pmap_entry(i))
                throw JsonError("stored pmap table disagrees with the realization");
        }

        AlgebraDocument doc;
        doc.algebra = g;
        doc.spec = parse_spec_name(name, p);
        if (j.contains("torus"))
            for (const auto& t : j.at("torus")) {
                FpVec coords = t.get<FpVec>();
                if (coords.size() != dim) throw JsonError("torus generator has wrong length");
                for (uint32_t c : coords)
                    if (c >= p) throw JsonError("torus coordinates not reduced mod p");
                doc.torus_coords.push_back(std::move(coords));
            }
        return doc;
    } catch (const JsonError&) {
        throw;
    } catch (const std::exception& e) {
        throw JsonError(std::string("algebra JSON invalid: ") + e.what());
    }
}

std::string element_to_json(const Element& e) {
    ordered_json j;
    j["algebra"] = e.algebra.name();
    j["coords"] = e.coords;
    return j.dump() + "\n";
}

FpVec element_coords_from_json(const std::string& text, const Algebra& g) {
    try {
        ordered_json j = ordered_json::parse(text);
        if (j.contains("algebra") && j.at("algebra").get<std::string>() != g.name())
            throw JsonError("element references a different algebra");
        FpVec coords = j.at("coords").get<FpVec>();
        if (coords.size() != g.dim()) throw JsonError("element coords have wrong length");
        for (auto& c : coords) c %= g.p();
        return coords;
    } catch (const JsonError&) {
        throw;
    } catch (const std::exception& e) {
        throw JsonError(std::string("element JSON invalid: ") + e.what());
    }
}

std::string module_to_json(const RestrictedModule& m) {
    ordered_json j;
    j["algebra"] = m.algebra.name() + "@" + std::to_string(m.algebra.p());
    j["dimV"] = m.dim_v;
    ordered_json action = ordered_json::array();
    for (const auto& mat : m.action) action.push_back(sparse_matrix_json(mat));
    j["action"] = std::move(action);
    return j.dump(2) + "\n";
}

RestrictedModule module_from_json(const std::string& text, const Algebra& g) {
    try {
        ordered_json j = ordered_json::parse(text);
        std::string ref = j.at("algebra").get<std::string>();
        std::string expect = g.name() + "@" + std::to_string(g.p());
        if (ref != expect)
            throw JsonError("module references algebra '" + ref + "', loaded '" + expect + "'");
        size_t dimv = j.at("dimV").get<size_t>();
        const auto& action = j.at("action");
        if (action.size() != g.dim())
            throw JsonError("module action count does not match algebra dim");
        std::vector<FpMatrix> mats;
        for (const auto& mj : action) mats.push_back(sparse_matrix_from_json(mj, g.p(), dimv));
        return check_restricted_module(g, std::move(mats));
    } catch (const JsonError&) {
        throw;
    } catch (const std::exception& e) {
        throw JsonError(std::string("module JSON invalid: ") + e.what());
    }
}

namespace {

ordered_json claim_json(const Claim& c) {
    ordered_json j;
    j["claim"] = c.id;
    j["locus"] = c.locus;
    j["expected"] = c.expected;
    j["computed"] = c.computed;
    j["status"] = to_string(c.status);
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

}  // namespace

std::string claims_to_json(const std::vector<Claim>& claims) {
    std::vector<Claim> sorted = claims;
    std::sort(sorted.begin(), sorted.end(),
              [](const Claim& a, const Claim& b) { return a.id < b.id; });
    ordered_json arr = ordered_json::array();
    for (const auto& c : sorted) arr.push_back(claim_json(c));
    ordered_json j;
    j["claims"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string invariant_report_to_json(const InvariantReport& report) {
    ordered_json j;
    j["algebra"] = report.spec.name();
    j["p"] = report.spec.p;
    j["dim"] = report.dim;
    j["mu_reference"] = report.mu_reference;
    j["mu_search"] = report.mu_search_dim;
    j["rank"] = report.rank;
    j["dim_tor"] = report.dim_tor;
    if (report.root_space_dim) j["root_space_dim"] = *report.root_space_dim;
    j["self_centralizing"] = report.self_centralizing;
    std::vector<Claim> sorted = report.claims;
    std::sort(sorted.begin(), sorted.end(),
              [](const Claim& a, const Claim& b) { return a.id < b.id; });
    ordered_json arr = ordered_json::array();
    for (const auto& c : sorted) arr.push_back(claim_json(c));
    j["claims"] = std::move(arr);
    return j.dump(2) + "\n";
}

}  // namespace rla
