#include "rla/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <variant>

namespace rla {

SparseVec to_sparse(const FpVec& v) {
    SparseVec s;
    for (uint32_t i = 0; i < v.size(); ++i)
        if (v[i]) s.emplace_back(i, v[i]);
    return s;
}

FpVec from_sparse(const SparseVec& s, size_t dim) {
    FpVec v(dim, 0);
    for (auto [i, c] : s) v[i] = c;
    return v;
}

namespace detail {

struct MatrixReal {
    std::vector<FpMatrix> basis;
    size_t m = 0;
    SpanSolver flat;  // rows = flattened basis matrices
};

struct DerivReal {
    MonoCtx ctx;
    std::vector<Derivation> basis;
    SpanSolver comp;  // rows = component vectors, width n * p^n
};

struct SubReal {
    Algebra parent;
    std::vector<FpVec> rows;  // basis in parent coordinates (canonical)
    SpanSolver span;
};

struct QuotReal {
    Algebra parent;
    std::vector<FpVec> ideal_rows;  // canonical rref rows
    SpanSolver ideal_span;
    std::vector<size_t> free_cols;  // lexicographically first complement
};

struct AlgebraImpl {
    uint32_t p = 3;
    size_t dim = 0;
    std::string name;
    std::vector<std::string> labels;
    std::variant<MatrixReal, DerivReal, SubReal, QuotReal> real;
    std::vector<SparseVec> sc;    // pair (i,j), i<j, at pair_index(i,j)
    std::vector<SparseVec> pmap;  // per basis element

    static size_t pair_index(size_t i, size_t j) { return j * (j - 1) / 2 + i; }

    static Algebra wrap(std::shared_ptr<const AlgebraImpl> impl) {
        return Algebra(std::move(impl));
    }
};

namespace {

std::vector<std::string> default_labels(size_t dim, const std::vector<std::string>& given) {
    if (!given.empty()) return given;
    std::vector<std::string> out;
    out.reserve(dim);
    for (size_t i = 0; i < dim; ++i) out.push_back("b" + std::to_string(i));
    return out;
}

void verify_jacobi_sample(const Algebra& g) {
    // Realizations satisfy Jacobi identically; this guards the structure
    // constant bookkeeping itself.
    const size_t d = g.dim();
    if (d < 3) return;
    size_t step = std::max<size_t>(1, d / 4);
    for (size_t i = 0; i < d; i += step)
        for (size_t j = i + 1; j < d; j += step)
            for (size_t k = j + 1; k < d; k += step) {
                FpVec x(d, 0), y(d, 0), z(d, 0);
                x[i] = 1;
                y[j] = 1;
                z[k] = 1;
                FpVec s = g.bracket_coords(x, g.bracket_coords(y, z));
                s = vec_add(s, g.bracket_coords(y, g.bracket_coords(z, x)), g.p());
                s = vec_add(s, g.bracket_coords(z, g.bracket_coords(x, y)), g.p());
                assert(vec_is_zero(s) && "Jacobi identity violated in structure constants");
                (void)s;
            }
}

Algebra finalize(std::shared_ptr<AlgebraImpl> impl) {
    Algebra g = AlgebraImpl::wrap(std::move(impl));
#ifndef NDEBUG
    verify_jacobi_sample(g);
#endif
    return g;
}

}  // namespace

}  // namespace detail

using detail::AlgebraImpl;

const AlgebraImpl& Algebra::impl() const {
    if (!impl_) throw AlgebraError("use of empty Algebra handle");
    return *impl_;
}

uint32_t Algebra::p() const { return impl().p; }
size_t Algebra::dim() const { return impl().dim; }
const std::string& Algebra::name() const { return impl().name; }
const std::vector<std::string>& Algebra::labels() const { return impl().labels; }

bool Algebra::is_subalgebra() const {
    return std::holds_alternative<detail::SubReal>(impl().real);
}

bool Algebra::is_quotient() const {
    return std::holds_alternative<detail::QuotReal>(impl().real);
}

Algebra Algebra::parent() const {
    if (auto* s = std::get_if<detail::SubReal>(&impl().real)) return s->parent;
    if (auto* q = std::get_if<detail::QuotReal>(&impl().real)) return q->parent;
    return Algebra();
}

size_t Algebra::realization_dim() const {
    const auto& r = impl().real;
    if (auto* m = std::get_if<detail::MatrixReal>(&r)) return m->m;
    if (auto* d = std::get_if<detail::DerivReal>(&r)) return d->ctx.size();
    if (auto* s = std::get_if<detail::SubReal>(&r)) return s->parent.realization_dim();
    return std::get<detail::QuotReal>(r).parent.realization_dim();
}

bool Algebra::has_matrix_realization() const {
    const auto& r = impl().real;
    if (std::holds_alternative<detail::QuotReal>(r)) return false;
    if (auto* s = std::get_if<detail::SubReal>(&r)) return s->parent.has_matrix_realization();
    return true;
}

FpMatrix Algebra::realization_matrix(const FpVec& coords) const {
    const auto& r = impl().real;
    if (auto* mr = std::get_if<detail::MatrixReal>(&r)) {
        FpMatrix acc(p(), mr->m, mr->m);
        for (size_t i = 0; i < coords.size(); ++i)
            if (coords[i]) acc = acc + mr->basis[i].scaled(coords[i]);
        return acc;
    }
    if (auto* dr = std::get_if<detail::DerivReal>(&r)) {
        FpMatrix acc(p(), dr->ctx.size(), dr->ctx.size());
        for (size_t i = 0; i < coords.size(); ++i)
            if (coords[i]) acc = acc + dr->basis[i].matrix().scaled(coords[i]);
        return acc;
    }
    if (auto* sr = std::get_if<detail::SubReal>(&r))
        return sr->parent.realization_matrix(coords_to_parent(coords));
    throw AlgebraError("no matrix realization available below a quotient");
}

Element Algebra::element(FpVec coords) const {
    if (coords.size() != dim()) throw AlgebraError("element: wrong coordinate length");
    for (auto& c : coords) c %= p();
    return Element{*this, std::move(coords)};
}

Element Algebra::element_sparse(const SparseVec& coords) const {
    return element(from_sparse(coords, dim()));
}

Element Algebra::zero_element() const { return Element{*this, FpVec(dim(), 0)}; }

Element Algebra::basis_element(size_t i) const {
    FpVec v(dim(), 0);
    v.at(i) = 1;
    return Element{*this, std::move(v)};
}

const SparseVec& Algebra::structure_constant(size_t i, size_t j) const {
    if (i >= j) throw AlgebraError("structure_constant: need i < j");
    return impl().sc[AlgebraImpl::pair_index(i, j)];
}

const SparseVec& Algebra::pmap_entry(size_t i) const { return impl().pmap.at(i); }

FpVec Algebra::bracket_coords(const FpVec& x, const FpVec& y) const {
    const auto& im = impl();
    FpVec out(im.dim, 0);
    for (uint32_t i = 0; i < im.dim; ++i) {
        if (!x[i]) continue;
        for (uint32_t j = 0; j < im.dim; ++j) {
            if (!y[j] || i == j) continue;
            uint32_t c = fp::mul(x[i], y[j], im.p);
            if (i < j) {
                for (auto [k, v] : im.sc[AlgebraImpl::pair_index(i, j)])
                    out[k] = fp::add(out[k], fp::mul(c, v, im.p), im.p);
            } else {
                uint32_t nc = fp::neg(c, im.p);
                for (auto [k, v] : im.sc[AlgebraImpl::pair_index(j, i)])
                    out[k] = fp::add(out[k], fp::mul(nc, v, im.p), im.p);
            }
        }
    }
    return out;
}

Element Algebra::bracket(const Element& x, const Element& y) const {
    if (!x.algebra.same(*this) || !y.algebra.same(*this))
        throw MixedAlgebraError("bracket: elements from different algebras");
    return Element{*this, bracket_coords(x.coords, y.coords)};
}

FpVec Algebra::p_power_coords(const FpVec& x) const {
    const auto& im = impl();
    const auto& r = im.real;
    if (auto* mr = std::get_if<detail::MatrixReal>(&r)) {
        FpMatrix m = realization_matrix(x);
        FpMatrix pm = mat_p_power(m);
        auto sol = mr->flat.solve(pm.data());
        if (!sol) throw ClosureError("p-th power escaped the span (corrupt realization)");
        return *sol;
    }
    if (auto* dr = std::get_if<detail::DerivReal>(&r)) {
        const MonoCtx& ctx = dr->ctx;
        // assemble the element's components
        std::vector<FpVec> comp_dense(ctx.n, FpVec(ctx.size(), 0));
        for (size_t i = 0; i < im.dim; ++i) {
            if (!x[i]) continue;
            const auto& comps = dr->basis[i].components();
            for (uint32_t t = 0; t < ctx.n; ++t)
                for (auto [mono, c] : comps[t].terms())
                    comp_dense[t][mono] =
                        fp::add(comp_dense[t][mono], fp::mul(c, x[i], im.p), im.p);
        }
        std::vector<TruncPoly> comps;
        comps.reserve(ctx.n);
        for (uint32_t t = 0; t < ctx.n; ++t)
            comps.push_back(TruncPoly::from_dense(ctx, comp_dense[t]));
        Derivation d(ctx, comps);
        // D^p(x_t): apply D another p-1 times to the component f_t
        FpVec sig;
        sig.reserve(static_cast<size_t>(ctx.n) * ctx.size());
        for (uint32_t t = 0; t < ctx.n; ++t) {
            TruncPoly acc = comps[t];
            for (uint32_t step = 1; step < im.p; ++step) acc = d.apply(acc);
            FpVec dsn = acc.dense();
            sig.insert(sig.end(), dsn.begin(), dsn.end());
        }
        auto sol = dr->comp.solve(sig);
        if (!sol) throw ClosureError("p-th power escaped the span (corrupt realization)");
        return *sol;
    }
    if (auto* sr = std::get_if<detail::SubReal>(&r)) {
        FpVec up = coords_to_parent(x);
        FpVec pp = sr->parent.p_power_coords(up);
        auto down = coords_from_parent(pp);
        if (!down) throw ClosureError("p-th power escaped the subalgebra");
        return *down;
    }
    const auto& qr = std::get<detail::QuotReal>(r);
    FpVec up = coords_to_parent(x);
    FpVec pp = qr.parent.p_power_coords(up);
    return *coords_from_parent(pp);
}

Element Algebra::p_power(const Element& x) const {
    if (!x.algebra.same(*this))
        throw MixedAlgebraError("p_power: element from a different algebra");
    return Element{*this, p_power_coords(x.coords)};
}

FpMatrix Algebra::ad_matrix(const FpVec& coords) const {
    const auto& im = impl();
    FpMatrix m(im.p, im.dim, im.dim);
    for (uint32_t j = 0; j < im.dim; ++j) {
        for (uint32_t i = 0; i < im.dim; ++i) {
            if (!coords[i] || i == j) continue;
            if (i < j) {
                for (auto [k, v] : im.sc[AlgebraImpl::pair_index(i, j)])
                    m.set(k, j, fp::add(m(k, j), fp::mul(coords[i], v, im.p), im.p));
            } else {
                uint32_t nc = fp::neg(coords[i], im.p);
                for (auto [k, v] : im.sc[AlgebraImpl::pair_index(j, i)])
                    m.set(k, j, fp::add(m(k, j), fp::mul(nc, v, im.p), im.p));
            }
        }
    }
    return m;
}

std::optional<FpVec> Algebra::coords_from_parent(const FpVec& parent_coords) const {
    const auto& r = impl().real;
    if (auto* sr = std::get_if<detail::SubReal>(&r)) return sr->span.solve(parent_coords);
    if (auto* qr = std::get_if<detail::QuotReal>(&r)) {
        FpVec v = parent_coords;
        qr->ideal_span.reduce_in_place(v);
        FpVec out(qr->free_cols.size());
        for (size_t i = 0; i < qr->free_cols.size(); ++i) out[i] = v[qr->free_cols[i]];
        return out;
    }
    throw AlgebraError("coords_from_parent: algebra has no parent");
}

FpVec Algebra::coords_to_parent(const FpVec& coords) const {
    const auto& r = impl().real;
    if (auto* sr = std::get_if<detail::SubReal>(&r)) {
        FpVec out(sr->parent.dim(), 0);
        for (size_t i = 0; i < coords.size(); ++i)
            if (coords[i]) vec_add_scaled(out, sr->rows[i], coords[i], p());
        return out;
    }
    if (auto* qr = std::get_if<detail::QuotReal>(&r)) {
        FpVec out(qr->parent.dim(), 0);
        for (size_t i = 0; i < coords.size(); ++i) out[qr->free_cols[i]] = coords[i];
        return out;
    }
    throw AlgebraError("coords_to_parent: algebra has no parent");
}

FpVec Algebra::coords_to_root(const FpVec& coords) const {
    if (!is_subalgebra() && !is_quotient()) return coords;
    if (is_quotient()) throw AlgebraError("coords_to_root: crosses a quotient");
    return parent().coords_to_root(coords_to_parent(coords));
}

// ---------------------------------------------------------------------------
// construction

Algebra Algebra::from_matrices(uint32_t p, std::vector<FpMatrix> basis,
                               std::vector<std::string> labels, std::string name) {
    fp::check_modulus(p);
    if (basis.empty()) throw AlgebraError("from_matrices: need at least one matrix");
    size_t m = basis.front().rows();
    for (const auto& b : basis) {
        if (b.rows() != m || b.cols() != m)
            throw AlgebraError("from_matrices: matrices must be square of equal size");
        if (b.p() != p) throw AlgebraError("from_matrices: modulus mismatch");
    }

    auto impl = std::make_shared<AlgebraImpl>();
    impl->p = p;
    impl->dim = basis.size();
    impl->name = std::move(name);
    impl->labels = detail::default_labels(impl->dim, labels);

    std::vector<FpVec> flat_rows;
    flat_rows.reserve(basis.size());
    for (const auto& b : basis) flat_rows.push_back(b.data());
    SpanSolver flat(p, std::move(flat_rows), m * m);
    if (!flat.rows_independent())
        throw DependentBasisError("from_matrices: basis matrices are dependent");

    const size_t d = impl->dim;
    impl->sc.resize(d * (d - 1) / 2);
    impl->pmap.resize(d);
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < j; ++i) {
            FpMatrix c = basis[i] * basis[j] - basis[j] * basis[i];
            auto sol = flat.solve(c.data());
            if (!sol)
                throw ClosureError("bracket [" + impl->labels[i] + ", " + impl->labels[j] +
                                   "] escapes the span");
            impl->sc[AlgebraImpl::pair_index(i, j)] = to_sparse(*sol);
        }
    }
    for (size_t i = 0; i < d; ++i) {
        FpMatrix pm = mat_p_power(basis[i]);
        auto sol = flat.solve(pm.data());
        if (!sol)
            throw ClosureError("p-th power of " + impl->labels[i] + " escapes the span");
        impl->pmap[i] = to_sparse(*sol);
    }

    impl->real = detail::MatrixReal{std::move(basis), m, std::move(flat)};
    return detail::finalize(std::move(impl));
}

Algebra Algebra::from_derivations(MonoCtx ctx, std::vector<Derivation> basis,
                                  std::vector<std::string> labels, std::string name) {
    if (basis.empty()) throw AlgebraError("from_derivations: need at least one derivation");
    for (const auto& d : basis)
        if (!(d.ctx() == ctx)) throw AlgebraError("from_derivations: mixed (n,p)");

    auto impl = std::make_shared<AlgebraImpl>();
    impl->p = ctx.p;
    impl->dim = basis.size();
    impl->name = std::move(name);
    impl->labels = detail::default_labels(impl->dim, labels);

    const size_t width = static_cast<size_t>(ctx.n) * ctx.size();
    std::vector<FpVec> comp_rows;
    comp_rows.reserve(basis.size());
    for (const auto& d : basis) comp_rows.push_back(d.component_vector());
    SpanSolver comp(ctx.p, std::move(comp_rows), width);
    if (!comp.rows_independent())
        throw DependentBasisError("from_derivations: basis derivations are dependent");

    const size_t d = impl->dim;
    const uint32_t p = ctx.p;
    impl->sc.resize(d * (d - 1) / 2);
    impl->pmap.resize(d);

    FpVec sig(width, 0);
    auto write_comp = [&](uint32_t t, const TruncPoly& f) {
        size_t off = static_cast<size_t>(t) * ctx.size();
        for (auto [mono, c] : f.terms()) sig[off + mono] = c;
    };
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < j; ++i) {
            std::fill(sig.begin(), sig.end(), 0);
            for (uint32_t t = 0; t < ctx.n; ++t) {
                TruncPoly h = basis[i].apply(basis[j].components()[t]) -
                              basis[j].apply(basis[i].components()[t]);
                write_comp(t, h);
            }
            auto sol = comp.solve(sig);
            if (!sol)
                throw ClosureError("bracket [" + impl->labels[i] + ", " + impl->labels[j] +
                                   "] escapes the span");
            impl->sc[AlgebraImpl::pair_index(i, j)] = to_sparse(*sol);
        }
    }
    for (size_t i = 0; i < d; ++i) {
        std::fill(sig.begin(), sig.end(), 0);
        for (uint32_t t = 0; t < ctx.n; ++t) {
            TruncPoly acc = basis[i].components()[t];
            for (uint32_t step = 1; step < p; ++step) acc = basis[i].apply(acc);
            write_comp(t, acc);
        }
        auto sol = comp.solve(sig);
        if (!sol)
            throw ClosureError("p-th power of " + impl->labels[i] + " escapes the span");
        impl->pmap[i] = to_sparse(*sol);
    }

    impl->real = detail::DerivReal{ctx, std::move(basis), std::move(comp)};
    return detail::finalize(std::move(impl));
}

Algebra Algebra::direct_sum(const Algebra& a, const Algebra& b, std::string name) {
    if (a.p() != b.p()) throw AlgebraError("direct_sum: different characteristics");
    if (!a.has_matrix_realization() || !b.has_matrix_realization())
        throw AlgebraError("direct_sum: both summands need matrix realizations");
    const uint32_t p = a.p();
    const size_t ma = a.realization_dim(), mb = b.realization_dim();
    std::vector<FpMatrix> basis;
    std::vector<std::string> labels;
    basis.reserve(a.dim() + b.dim());
    auto embed = [&](const FpMatrix& m, bool left) {
        FpMatrix out(p, ma + mb, ma + mb);
        size_t off = left ? 0 : ma;
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t c = 0; c < m.cols(); ++c)
                if (m(r, c)) out.set(r + off, c + off, m(r, c));
        return out;
    };
    for (size_t i = 0; i < a.dim(); ++i) {
        FpVec e(a.dim(), 0);
        e[i] = 1;
        basis.push_back(embed(a.realization_matrix(e), true));
        labels.push_back(a.labels()[i]);
    }
    for (size_t i = 0; i < b.dim(); ++i) {
        FpVec e(b.dim(), 0);
        e[i] = 1;
        basis.push_back(embed(b.realization_matrix(e), false));
        labels.push_back(b.labels()[i]);
    }
    if (name.empty()) name = a.name() + "(+)" + b.name();
    return from_matrices(p, std::move(basis), std::move(labels), std::move(name));
}

Algebra Algebra::renamed(std::string new_name) const {
    auto copy = std::make_shared<AlgebraImpl>(impl());
    copy->name = std::move(new_name);
    return AlgebraImpl::wrap(std::move(copy));
}

std::optional<FpVec> Algebra::solve_derivation(const Derivation& d) const {
    const auto& r = impl().real;
    if (auto* dr = std::get_if<detail::DerivReal>(&r)) {
        if (!(d.ctx() == dr->ctx)) throw AlgebraError("solve_derivation: mixed (n,p)");
        return dr->comp.solve(d.component_vector());
    }
    if (auto* mr = std::get_if<detail::MatrixReal>(&r)) {
        if (d.ctx().size() != mr->m) return std::nullopt;
        return mr->flat.solve(d.matrix().data());
    }
    if (auto* sr = std::get_if<detail::SubReal>(&r)) {
        auto up = sr->parent.solve_derivation(d);
        if (!up) return std::nullopt;
        return coords_from_parent(*up);
    }
    throw AlgebraError("solve_derivation: not available in a quotient");
}

std::optional<FpVec> Algebra::solve_matrix(const FpMatrix& m) const {
    const auto& r = impl().real;
    if (auto* mr = std::get_if<detail::MatrixReal>(&r)) return mr->flat.solve(m.data());
    if (auto* dr = std::get_if<detail::DerivReal>(&r)) {
        auto d = derivation_from_matrix(dr->ctx, m);
        if (!d) return std::nullopt;
        return dr->comp.solve(d->component_vector());
    }
    if (auto* sr = std::get_if<detail::SubReal>(&r)) {
        auto up = sr->parent.solve_matrix(m);
        if (!up) return std::nullopt;
        return coords_from_parent(*up);
    }
    throw AlgebraError("solve_matrix: not available in a quotient");
}

Algebra Algebra::subalgebra(std::vector<FpVec> coords_rows, std::string name) const {
    const uint32_t pr = p();
    std::vector<FpVec> rows = canonical_span(pr, coords_rows, dim());

    auto impl = std::make_shared<AlgebraImpl>();
    impl->p = pr;
    impl->dim = rows.size();
    impl->name = name.empty() ? this->name() + ".sub" : std::move(name);
    impl->labels = detail::default_labels(impl->dim, {});

    SpanSolver span(pr, rows, dim());
    const size_t d = impl->dim;
    impl->sc.resize(d * (d - 1) / 2);
    impl->pmap.resize(d);
    for (size_t j = 0; j < d; ++j) {
        for (size_t i = 0; i < j; ++i) {
            FpVec br = bracket_coords(rows[i], rows[j]);
            auto sol = span.solve(br);
            if (!sol)
                throw ClosureError("subalgebra: bracket of rows " + std::to_string(i) + "," +
                                   std::to_string(j) + " escapes the span");
            impl->sc[AlgebraImpl::pair_index(i, j)] = to_sparse(*sol);
        }
    }
    for (size_t i = 0; i < d; ++i) {
        FpVec pp = p_power_coords(rows[i]);
        auto sol = span.solve(pp);
        if (!sol)
            throw ClosureError("subalgebra: p-th power of row " + std::to_string(i) +
                               " escapes the span");
        impl->pmap[i] = to_sparse(*sol);
    }

    impl->real = detail::SubReal{*this, std::move(rows), std::move(span)};
    return detail::finalize(std::move(impl));
}

Algebra Algebra::centralizer(const std::vector<Element>& s, std::string name) const {
    for (const auto& e : s)
        if (!e.algebra.same(*this))
            throw MixedAlgebraError("centralizer: element from a different algebra");
    if (name.empty()) name = this->name() + ".cent";
    const size_t d = dim();
    if (s.empty()) {
        std::vector<FpVec> rows;
        for (size_t i = 0; i < d; ++i) {
            FpVec e(d, 0);
            e[i] = 1;
            rows.push_back(std::move(e));
        }
        return subalgebra(std::move(rows), std::move(name));
    }
    FpMatrix stacked(p(), s.size() * d, d);
    for (size_t k = 0; k < s.size(); ++k) {
        FpMatrix ad = ad_matrix(s[k].coords);
        for (size_t r = 0; r < d; ++r)
            for (size_t c = 0; c < d; ++c)
                if (ad(r, c)) stacked.set(k * d + r, c, ad(r, c));
    }
    return subalgebra(kernel_basis(stacked), std::move(name));
}

Algebra Algebra::derived_subalgebra(std::string name) const {
    const size_t d = dim();
    std::vector<FpVec> rows;
    for (size_t j = 0; j < d; ++j)
        for (size_t i = 0; i < j; ++i) {
            const auto& sc = impl().sc[AlgebraImpl::pair_index(i, j)];
            if (!sc.empty()) rows.push_back(from_sparse(sc, d));
        }
    if (name.empty()) name = this->name() + ".derived";
    if (rows.empty()) return subalgebra({}, std::move(name));
    return subalgebra(std::move(rows), std::move(name));
}

Algebra Algebra::center(std::string name) const {
    std::vector<Element> all;
    all.reserve(dim());
    for (size_t i = 0; i < dim(); ++i) all.push_back(basis_element(i));
    if (name.empty()) name = this->name() + ".center";
    return centralizer(all, std::move(name));
}

bool Algebra::is_lie_nilpotent() const {
    const size_t d = dim();
    if (d == 0) return true;
    const uint32_t pr = p();
    std::vector<FpVec> layer;
    for (size_t i = 0; i < d; ++i) {
        FpVec e(d, 0);
        e[i] = 1;
        layer.push_back(std::move(e));
    }
    while (true) {
        std::vector<FpVec> next;
        for (size_t i = 0; i < d; ++i) {
            FpVec bi(d, 0);
            bi[i] = 1;
            for (const auto& v : layer) {
                FpVec w = bracket_coords(bi, v);
                if (!vec_is_zero(w)) next.push_back(std::move(w));
            }
        }
        next = canonical_span(pr, next, d);
        if (next.empty()) return true;
        if (next.size() >= layer.size()) return false;  // stabilized above zero
        layer = std::move(next);
    }
}

bool Algebra::is_p_nilpotent() const {
    const size_t d = dim();
    if (d == 0) return true;
    const uint32_t pr = p();

    if (!is_lie_nilpotent()) return false;

    // the p-power chain on the center must reach zero; the p-map is
    // additive there, so spans of p-powers descend linearly.
    Algebra z = center();
    std::vector<FpVec> chain;
    for (size_t i = 0; i < z.dim(); ++i) {
        FpVec e(z.dim(), 0);
        e[i] = 1;
        chain.push_back(z.coords_to_parent(e));
    }
    while (!chain.empty()) {
        std::vector<FpVec> next;
        for (const auto& v : chain) {
            FpVec w = p_power_coords(v);
            if (!vec_is_zero(w)) next.push_back(std::move(w));
        }
        next = canonical_span(pr, next, d);
        if (next.size() >= chain.size()) return false;
        chain = std::move(next);
    }
    return true;
}

Ideal Algebra::ideal(std::vector<FpVec> coords_rows) const {
    const uint32_t pr = p();
    std::vector<FpVec> rows = canonical_span(pr, coords_rows, dim());
    SpanSolver span(pr, rows, dim());
    for (size_t i = 0; i < dim(); ++i) {
        FpVec bi(dim(), 0);
        bi[i] = 1;
        for (const auto& v : rows) {
            FpVec w = bracket_coords(bi, v);
            if (!span.contains(w))
                throw NotIdealError("ideal: [" + labels()[i] +
                                    ", n] escapes the candidate span");
        }
    }
    bool p_closed = true;
    for (const auto& v : rows)
        if (!span.contains(p_power_coords(v))) {
            p_closed = false;
            break;
        }
    return Ideal{*this, std::move(rows), p_closed};
}

Algebra Algebra::quotient(const Ideal& n, std::string name) const {
    if (!n.algebra.same(*this)) throw MixedAlgebraError("quotient: ideal of another algebra");
    if (!n.is_p_ideal) throw NotPIdealError("quotient: ideal is not closed under the p-map");
    const uint32_t pr = p();
    const size_t d = dim();

    SpanSolver ideal_span(pr, n.basis_coords, d);
    std::vector<bool> is_pivot(d, false);
    for (size_t c : ideal_span.pivot_columns()) is_pivot[c] = true;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < d; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    auto impl = std::make_shared<AlgebraImpl>();
    impl->p = pr;
    impl->dim = free_cols.size();
    impl->name = name.empty() ? this->name() + ".quot" : std::move(name);
    impl->labels.reserve(impl->dim);
    for (size_t c : free_cols) impl->labels.push_back(labels()[c]);

    detail::QuotReal qr{*this, n.basis_coords, std::move(ideal_span), std::move(free_cols)};
    auto project = [&](const FpVec& v) {
        FpVec w = v;
        qr.ideal_span.reduce_in_place(w);
        FpVec out(qr.free_cols.size());
        for (size_t i = 0; i < qr.free_cols.size(); ++i) out[i] = w[qr.free_cols[i]];
        return out;
    };

    const size_t qd = impl->dim;
    impl->sc.resize(qd * (qd - 1) / 2);
    impl->pmap.resize(qd);
    for (size_t j = 0; j < qd; ++j) {
        FpVec ej(d, 0);
        ej[qr.free_cols[j]] = 1;
        for (size_t i = 0; i < j; ++i) {
            FpVec ei(d, 0);
            ei[qr.free_cols[i]] = 1;
            impl->sc[AlgebraImpl::pair_index(i, j)] = to_sparse(project(bracket_coords(ei, ej)));
        }
        impl->pmap[j] = to_sparse(project(p_power_coords(ej)));
    }

    impl->real = std::move(qr);
    return detail::finalize(std::move(impl));
}

}  // namespace rla
