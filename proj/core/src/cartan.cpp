#include "rla/cartan.hpp"

#include <sstream>
#include <stdexcept>

namespace rla {

std::string family_token(Family f) {
    switch (f) {
        case Family::W: return "W";
        case Family::S: return "S";
        case Family::H: return "H";
        case Family::Hprime: return "Hprime";
        case Family::Kpp: return "Kpp";
        case Family::K: return "K";
        case Family::P: return "P";
    }
    return "?";
}

std::optional<Family> parse_family_token(const std::string& token) {
    if (token == "W") return Family::W;
    if (token == "S") return Family::S;
    if (token == "H") return Family::H;
    if (token == "Hprime") return Family::Hprime;
    if (token == "Kpp") return Family::Kpp;
    if (token == "K") return Family::K;
    if (token == "P") return Family::P;
    return std::nullopt;
}

std::string FamilySpec::name() const {
    std::ostringstream os;
    switch (family) {
        case Family::W: os << "W(" << size << ")"; break;
        case Family::S: os << "S(" << size << ")"; break;
        case Family::H: os << "H(" << size << ")"; break;
        case Family::Hprime: os << "H'(" << size << ")"; break;
        case Family::Kpp: os << "K''(" << size << ")"; break;
        case Family::K: os << "K(" << size << ")"; break;
        case Family::P: os << "P(" << size << ")"; break;
    }
    return os.str();
}

std::string FamilySpec::display() const { return name() + "@p" + std::to_string(p); }

void FamilySpec::validate() const {
    fp::check_modulus(p);
    switch (family) {
        case Family::W:
            if (size < 1) throw std::invalid_argument("W(n): need n >= 1");
            break;
        case Family::S:
            if (size < 3) throw std::invalid_argument("S(n): need n >= 3");
            break;
        case Family::H:
        case Family::Hprime:
        case Family::P:
            if (size < 2 || size % 2 != 0)
                throw std::invalid_argument(name() + ": size must be even 2r >= 2");
            break;
        case Family::Kpp:
        case Family::K:
            if (size < 3 || size % 2 == 0)
                throw std::invalid_argument(name() + ": n must be odd, n >= 3");
            break;
    }
}

std::optional<FamilySpec> parse_spec_name(const std::string& name, uint32_t p) {
    auto open = name.find('(');
    auto close = name.find(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        return std::nullopt;
    std::string fam = name.substr(0, open);
    std::string num = name.substr(open + 1, close - open - 1);
    uint32_t size = 0;
    try {
        size = static_cast<uint32_t>(std::stoul(num));
    } catch (...) {
        return std::nullopt;
    }
    FamilySpec spec;
    spec.size = size;
    spec.p = p;
    if (fam == "W")
        spec.family = Family::W;
    else if (fam == "S")
        spec.family = Family::S;
    else if (fam == "H")
        spec.family = Family::H;
    else if (fam == "H'")
        spec.family = Family::Hprime;
    else if (fam == "K''")
        spec.family = Family::Kpp;
    else if (fam == "K")
        spec.family = Family::K;
    else if (fam == "P")
        spec.family = Family::P;
    else
        return std::nullopt;
    try {
        spec.validate();
    } catch (...) {
        return std::nullopt;
    }
    return spec;
}

namespace {

std::string monomial_label(const MonoCtx& ctx, uint32_t index, uint32_t var) {
    TruncPoly f = TruncPoly::from_dense(ctx, [&] {
        FpVec v(ctx.size(), 0);
        v[index] = 1;
        return v;
    }());
    if (index == 0) return "d" + std::to_string(var + 1);
    return f.to_string() + "*d" + std::to_string(var + 1);
}

}  // namespace

Algebra build_W(uint32_t n, uint32_t p) {
    MonoCtx ctx(n, p);
    std::vector<Derivation> basis;
    std::vector<std::string> labels;
    basis.reserve(static_cast<size_t>(n) * ctx.size());
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t a = 0; a < ctx.size(); ++a) {
            std::vector<TruncPoly> comps(n, TruncPoly(ctx));
            FpVec coeff(ctx.size(), 0);
            coeff[a] = 1;
            comps[i] = TruncPoly::from_dense(ctx, coeff);
            basis.emplace_back(ctx, std::move(comps));
            labels.push_back(monomial_label(ctx, a, i));
        }
    }
    return Algebra::from_derivations(ctx, std::move(basis), std::move(labels),
                                     "W(" + std::to_string(n) + ")");
}

namespace {

// Rebuilds the span of `rows` (coordinates over `basis` derivations) as a
// root algebra of its own; each row combines to one derivation.
Algebra rebase_derivation_span(const MonoCtx& ctx, const std::vector<Derivation>& basis,
                               const std::vector<FpVec>& rows, const std::string& name,
                               std::vector<std::string> labels = {}) {
    std::vector<Derivation> ders;
    ders.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<TruncPoly> comps(ctx.n, TruncPoly(ctx));
        for (size_t k = 0; k < row.size(); ++k) {
            if (!row[k]) continue;
            const auto& bc = basis[k].components();
            for (uint32_t t = 0; t < ctx.n; ++t)
                comps[t] = comps[t] + bc[t].scaled(row[k]);
        }
        ders.emplace_back(ctx, std::move(comps));
    }
    return Algebra::from_derivations(ctx, std::move(ders), std::move(labels), name);
}

std::vector<FpVec> derived_span_rows(const Algebra& g) {
    std::vector<FpVec> rows;
    const size_t d = g.dim();
    for (size_t j = 0; j < d; ++j)
        for (size_t i = 0; i < j; ++i) {
            const auto& sc = g.structure_constant(i, j);
            if (!sc.empty()) rows.push_back(from_sparse(sc, d));
        }
    return canonical_span(g.p(), rows, d);
}

}  // namespace

Algebra build_S(uint32_t n, uint32_t p) {
    if (n < 3) throw std::invalid_argument("build_S: need n >= 3");
    MonoCtx ctx(n, p);
    const size_t pn = ctx.size();

    // divergence map on W(n): column (i, a) sends x^a d_i to d_i(x^a)
    FpMatrix div(p, pn, n * pn);
    for (uint32_t i = 0; i < n; ++i)
        for (uint32_t a = 0; a < pn; ++a) {
            auto e = ctx.decode(a);
            if (e[i] == 0) continue;
            uint32_t k = e[i];
            e[i] -= 1;
            div.set(ctx.encode(e), i * pn + a, k % p);
        }

    std::vector<Derivation> free_basis;
    for (const FpVec& v : kernel_basis(div)) {
        std::vector<TruncPoly> comps;
        comps.reserve(n);
        for (uint32_t t = 0; t < n; ++t)
            comps.push_back(TruncPoly::from_dense(
                ctx, FpVec(v.begin() + static_cast<size_t>(t) * pn,
                           v.begin() + static_cast<size_t>(t + 1) * pn)));
        free_basis.emplace_back(ctx, std::move(comps));
    }
    Algebra divergence_free = Algebra::from_derivations(
        ctx, free_basis, {}, "CW(" + std::to_string(n) + ")");

    auto rows = derived_span_rows(divergence_free);
    return rebase_derivation_span(ctx, free_basis, rows, "S(" + std::to_string(n) + ")");
}

Derivation hamiltonian_derivation(const TruncPoly& f) {
    const MonoCtx& ctx = f.ctx();
    if (ctx.n % 2 != 0) throw std::invalid_argument("hamiltonian_derivation: need n = 2r");
    const uint32_t r = ctx.n / 2;
    std::vector<TruncPoly> comps(ctx.n, TruncPoly(ctx));
    for (uint32_t i = 0; i < r; ++i) {
        comps[i + r] = comps[i + r] + f.partial(i);
        comps[i] = comps[i] - f.partial(i + r);
    }
    return Derivation(ctx, std::move(comps));
}

HFamily build_H_family(uint32_t r, uint32_t p) {
    if (r < 1) throw std::invalid_argument("build_H_family: need r >= 1");
    MonoCtx ctx(2 * r, p);
    std::vector<Derivation> basis;
    std::vector<std::string> labels;
    for (uint32_t a = 1; a < ctx.size(); ++a) {  // constants are the kernel
        FpVec coeff(ctx.size(), 0);
        coeff[a] = 1;
        TruncPoly f = TruncPoly::from_dense(ctx, coeff);
        basis.push_back(hamiltonian_derivation(f));
        labels.push_back("DH(" + f.to_string() + ")");
    }
    std::string nstr = std::to_string(2 * r);
    Algebra hprime =
        Algebra::from_derivations(ctx, basis, std::move(labels), "H'(" + nstr + ")");

    auto rows = derived_span_rows(hprime);
    std::vector<std::string> hlabels;
    std::vector<Derivation> hbasis;
    for (const auto& row : rows) {
        TruncPoly f(ctx);
        for (size_t k = 0; k < row.size(); ++k)
            if (row[k]) f.add_term(static_cast<uint32_t>(k + 1), row[k]);
        hbasis.push_back(hamiltonian_derivation(f));
        hlabels.push_back("DH(" + f.to_string() + ")");
    }
    Algebra h = Algebra::from_derivations(ctx, std::move(hbasis), std::move(hlabels),
                                          "H(" + nstr + ")");
    return HFamily{std::move(hprime), std::move(h)};
}

Derivation contact_derivation(const TruncPoly& f) {
    const MonoCtx& ctx = f.ctx();
    if (ctx.n % 2 != 1 || ctx.n < 3)
        throw std::invalid_argument("contact_derivation: need odd n >= 3");
    const uint32_t r = (ctx.n - 1) / 2;
    const uint32_t last = ctx.n - 1;
    const uint32_t p = ctx.p;

    TruncPoly df_last = f.partial(last);
    std::vector<TruncPoly> comps(ctx.n, TruncPoly(ctx));
    TruncPoly euler(ctx);  // sum_{i<2r} x_i d_i(f)
    for (uint32_t i = 0; i < 2 * r; ++i) {
        uint32_t conj = i < r ? i + r : i - r;
        bool conj_positive = conj < r;
        TruncPoly term = TruncPoly::variable(ctx, i) * df_last;
        TruncPoly dconj = f.partial(conj);
        comps[i] = conj_positive ? term + dconj : term - dconj;
        euler = euler + TruncPoly::variable(ctx, i) * f.partial(i);
    }
    comps[last] = f.scaled(2 % p) - euler;
    return Derivation(ctx, std::move(comps));
}

namespace {

// Component solver for the image of D_K; rows are D_K(x^a).
struct ContactImage {
    MonoCtx ctx;
    std::vector<Derivation> basis;
    SpanSolver solver;

    explicit ContactImage(MonoCtx c) : ctx(c) {
        std::vector<FpVec> rows;
        rows.reserve(ctx.size());
        for (uint32_t a = 0; a < ctx.size(); ++a) {
            FpVec coeff(ctx.size(), 0);
            coeff[a] = 1;
            basis.push_back(contact_derivation(TruncPoly::from_dense(ctx, coeff)));
            rows.push_back(basis.back().component_vector());
        }
        solver = SpanSolver(ctx.p, std::move(rows), static_cast<size_t>(ctx.n) * ctx.size());
    }
};

}  // namespace

TruncPoly contact_bracket(const TruncPoly& f, const TruncPoly& g) {
    const MonoCtx& ctx = f.ctx();
    if (!(ctx == g.ctx())) throw std::invalid_argument("contact_bracket: mixed (n,p)");
    Derivation df = contact_derivation(f);
    Derivation dg = contact_derivation(g);

    FpVec sig(static_cast<size_t>(ctx.n) * ctx.size(), 0);
    for (uint32_t t = 0; t < ctx.n; ++t) {
        TruncPoly h = df.apply(dg.components()[t]) - dg.apply(df.components()[t]);
        size_t off = static_cast<size_t>(t) * ctx.size();
        for (auto [mono, c] : h.terms()) sig[off + mono] = c;
    }
    ContactImage image(ctx);
    auto sol = image.solver.solve(sig);
    if (!sol)
        throw PullbackError("contact_bracket: commutator escapes the image of the contact map");
    return TruncPoly::from_dense(ctx, *sol);
}

KFamily build_K_family(uint32_t n, uint32_t p) {
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("build_K_family: need odd n >= 3");
    MonoCtx ctx(n, p);
    std::vector<Derivation> basis;
    std::vector<std::string> labels;
    for (uint32_t a = 0; a < ctx.size(); ++a) {
        FpVec coeff(ctx.size(), 0);
        coeff[a] = 1;
        TruncPoly f = TruncPoly::from_dense(ctx, coeff);
        basis.push_back(contact_derivation(f));
        labels.push_back("DK(" + f.to_string() + ")");
    }
    std::string nstr = std::to_string(n);
    Algebra kpp = Algebra::from_derivations(ctx, basis, std::move(labels), "K''(" + nstr + ")");

    auto rows = derived_span_rows(kpp);
    Algebra k;
    if (rows.size() == kpp.dim()) {
        k = kpp.renamed("K(" + nstr + ")");
    } else {
        // coordinates over D_K(x^a) pull back to polynomials directly
        std::vector<Derivation> kbasis;
        std::vector<std::string> klabels;
        for (const auto& row : rows) {
            TruncPoly f = TruncPoly::from_dense(ctx, row);
            kbasis.push_back(contact_derivation(f));
            klabels.push_back("DK(" + f.to_string() + ")");
        }
        k = Algebra::from_derivations(ctx, std::move(kbasis), std::move(klabels),
                                      "K(" + nstr + ")");
    }
    return KFamily{std::move(kpp), std::move(k)};
}

Algebra build_P(uint32_t r, uint32_t p) {
    if (r < 1) throw std::invalid_argument("build_P: need r >= 1");
    uint32_t n = 2 * r + 1;
    KFamily kf = build_K_family(n, p);
    MonoCtx ctx(n, p);
    TruncPoly shift = TruncPoly::constant(ctx, 1) + TruncPoly::variable(ctx, n - 1);
    auto coords = kf.kpp.solve_derivation(contact_derivation(shift));
    if (!coords) throw AlgebraError("build_P: contact image misses D_K(1+x_n)");
    Element e = kf.kpp.element(*coords);
    return kf.kpp.centralizer({e}, "P(" + std::to_string(2 * r) + ")");
}

Algebra build_family(const FamilySpec& spec) {
    spec.validate();
    switch (spec.family) {
        case Family::W: return build_W(spec.size, spec.p);
        case Family::S: return build_S(spec.size, spec.p);
        case Family::H: return build_H_family(spec.size / 2, spec.p).h;
        case Family::Hprime: return build_H_family(spec.size / 2, spec.p).hprime;
        case Family::Kpp: return build_K_family(spec.size, spec.p).kpp;
        case Family::K: return build_K_family(spec.size, spec.p).k;
        case Family::P: return build_P(spec.size / 2, spec.p);
    }
    throw std::invalid_argument("build_family: unknown family");
}

RegisteredTorus registered_torus(const FamilySpec& spec, const Algebra& algebra) {
    spec.validate();
    RegisteredTorus out;
    out.spec = spec;

    auto solve_or_fail = [&](const Derivation& d, const std::string& what) {
        auto coords = algebra.solve_derivation(d);
        if (!coords)
            throw TorusError("registered torus generator " + what + " is not a member of " +
                             algebra.name());
        out.generator_coords.push_back(*coords);
    };

    switch (spec.family) {
        case Family::W: {
            MonoCtx ctx(spec.size, spec.p);
            for (uint32_t i = 0; i < spec.size; ++i) {
                std::vector<TruncPoly> comps(ctx.n, TruncPoly(ctx));
                comps[i] = TruncPoly::variable(ctx, i);
                solve_or_fail(Derivation(ctx, comps), "x" + std::to_string(i + 1) + "*d" +
                                                          std::to_string(i + 1));
            }
            out.mu_reference = spec.size;
            out.citation = "Demushkin torus tables";
            break;
        }
        case Family::S: {
            MonoCtx ctx(spec.size, spec.p);
            for (uint32_t i = 0; i + 1 < spec.size; ++i) {
                std::vector<TruncPoly> comps(ctx.n, TruncPoly(ctx));
                comps[i] = TruncPoly::variable(ctx, i);
                comps[i + 1] = TruncPoly(ctx) - TruncPoly::variable(ctx, i + 1);
                solve_or_fail(Derivation(ctx, comps),
                              "x" + std::to_string(i + 1) + "*d" + std::to_string(i + 1) + "-x" +
                                  std::to_string(i + 2) + "*d" + std::to_string(i + 2));
            }
            out.mu_reference = spec.size - 1;
            out.citation = "Demushkin torus tables";
            break;
        }
        case Family::H:
        case Family::Hprime: {
            uint32_t r = spec.size / 2;
            MonoCtx ctx(spec.size, spec.p);
            for (uint32_t i = 0; i < r; ++i) {
                TruncPoly f = TruncPoly::variable(ctx, i) * TruncPoly::variable(ctx, i + r);
                out.generator_polys.push_back(f);
                solve_or_fail(hamiltonian_derivation(f), "DH(" + f.to_string() + ")");
            }
            out.mu_reference = r;
            out.citation = "Demushkin torus tables";
            break;
        }
        case Family::Kpp:
        case Family::K:
        case Family::P: {
            uint32_t n = spec.family == Family::P ? spec.size + 1 : spec.size;
            uint32_t r = (n - 1) / 2;
            MonoCtx ctx(n, spec.p);
            for (uint32_t i = 0; i < r; ++i) {
                TruncPoly f = TruncPoly::variable(ctx, i) * TruncPoly::variable(ctx, i + r);
                out.generator_polys.push_back(f);
                solve_or_fail(contact_derivation(f), "DK(" + f.to_string() + ")");
            }
            TruncPoly shift = TruncPoly::constant(ctx, 1) + TruncPoly::variable(ctx, n - 1);
            out.generator_polys.push_back(shift);
            solve_or_fail(contact_derivation(shift), "DK(" + shift.to_string() + ")");
            out.mu_reference = r + 1;
            out.citation = "standard contact torus catalog";
            break;
        }
    }
    return out;
}

}  // namespace rla
