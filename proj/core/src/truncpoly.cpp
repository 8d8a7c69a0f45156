#include "rla/truncpoly.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace rla {

MonoCtx::MonoCtx(uint32_t n_vars, uint32_t prime) : p(prime), n(n_vars) {
    fp::check_modulus(prime);
    if (n_vars < 1) throw std::invalid_argument("MonoCtx: need n >= 1");
    size_ = 1;
    stride_.assign(n, 1);
    for (uint32_t i = 0; i < n; ++i) size_ *= p;
    for (int i = static_cast<int>(n) - 2; i >= 0; --i) stride_[i] = stride_[i + 1] * p;
}

std::vector<uint32_t> MonoCtx::decode(uint32_t index) const {
    std::vector<uint32_t> e(n);
    for (uint32_t i = 0; i < n; ++i) {
        e[i] = (index / stride_[i]) % p;
    }
    return e;
}

uint32_t MonoCtx::encode(const std::vector<uint32_t>& exps) const {
    if (exps.size() != n) throw std::invalid_argument("MonoCtx::encode: wrong arity");
    uint32_t idx = 0;
    for (uint32_t i = 0; i < n; ++i) {
        if (exps[i] >= p) throw std::invalid_argument("MonoCtx::encode: exponent >= p");
        idx += exps[i] * stride_[i];
    }
    return idx;
}

uint32_t MonoCtx::exponent(uint32_t index, uint32_t var) const {
    return (index / stride_[var]) % p;
}

std::vector<std::vector<uint32_t>> monomial_basis(uint32_t n, uint32_t p) {
    MonoCtx ctx(n, p);
    std::vector<std::vector<uint32_t>> out;
    out.reserve(ctx.size());
    for (uint32_t i = 0; i < ctx.size(); ++i) out.push_back(ctx.decode(i));
    return out;
}

TruncPoly TruncPoly::constant(MonoCtx ctx, uint32_t c) {
    TruncPoly f(ctx);
    f.add_term(0, c);
    return f;
}

TruncPoly TruncPoly::variable(MonoCtx ctx, uint32_t var) {
    std::vector<uint32_t> e(ctx.n, 0);
    e[var] = 1;
    return monomial(ctx, e);
}

TruncPoly TruncPoly::monomial(MonoCtx ctx, const std::vector<uint32_t>& exps, uint32_t c) {
    TruncPoly f(ctx);
    f.add_term(ctx.encode(exps), c);
    return f;
}

uint32_t TruncPoly::coeff(uint32_t index) const {
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? 0 : it->second;
}

void TruncPoly::add_term(uint32_t index, uint32_t c) {
    c %= ctx_.p;
    if (c == 0) return;
    auto [it, inserted] = coeffs_.emplace(index, c);
    if (!inserted) {
        it->second = fp::add(it->second, c, ctx_.p);
        if (it->second == 0) coeffs_.erase(it);
    }
}

TruncPoly TruncPoly::operator+(const TruncPoly& rhs) const {
    if (!(ctx_ == rhs.ctx_)) throw std::invalid_argument("TruncPoly: mixed (n,p)");
    TruncPoly out = *this;
    for (auto [i, c] : rhs.coeffs_) out.add_term(i, c);
    return out;
}

TruncPoly TruncPoly::operator-(const TruncPoly& rhs) const {
    if (!(ctx_ == rhs.ctx_)) throw std::invalid_argument("TruncPoly: mixed (n,p)");
    TruncPoly out = *this;
    for (auto [i, c] : rhs.coeffs_) out.add_term(i, fp::neg(c, ctx_.p));
    return out;
}

TruncPoly TruncPoly::scaled(uint32_t c) const {
    TruncPoly out(ctx_);
    c %= ctx_.p;
    if (c == 0) return out;
    for (auto [i, a] : coeffs_) out.coeffs_[i] = fp::mul(a, c, ctx_.p);
    return out;
}

TruncPoly TruncPoly::operator*(const TruncPoly& rhs) const {
    if (!(ctx_ == rhs.ctx_)) throw std::invalid_argument("TruncPoly: mixed (n,p)");
    TruncPoly out(ctx_);
    const uint32_t p = ctx_.p;
    for (auto [ia, ca] : coeffs_) {
        auto ea = ctx_.decode(ia);
        for (auto [ib, cb] : rhs.coeffs_) {
            auto eb = ctx_.decode(ib);
            bool dead = false;
            std::vector<uint32_t> e(ctx_.n);
            for (uint32_t k = 0; k < ctx_.n; ++k) {
                e[k] = ea[k] + eb[k];
                if (e[k] >= p) {  // X_k^p = 0
                    dead = true;
                    break;
                }
            }
            if (dead) continue;
            out.add_term(ctx_.encode(e), fp::mul(ca, cb, p));
        }
    }
    return out;
}

TruncPoly TruncPoly::partial(uint32_t var) const {
    if (var >= ctx_.n) throw std::out_of_range("TruncPoly::partial: variable index");
    TruncPoly out(ctx_);
    for (auto [i, c] : coeffs_) {
        auto e = ctx_.decode(i);
        if (e[var] == 0) continue;
        uint32_t k = e[var];
        e[var] -= 1;
        out.add_term(ctx_.encode(e), fp::mul(c, k % ctx_.p, ctx_.p));
    }
    return out;
}

FpVec TruncPoly::dense() const {
    FpVec v(ctx_.size(), 0);
    for (auto [i, c] : coeffs_) v[i] = c;
    return v;
}

TruncPoly TruncPoly::from_dense(MonoCtx ctx, const FpVec& coeffs) {
    if (coeffs.size() != ctx.size())
        throw std::invalid_argument("TruncPoly::from_dense: wrong length");
    TruncPoly f(ctx);
    for (uint32_t i = 0; i < coeffs.size(); ++i) f.add_term(i, coeffs[i]);
    return f;
}

std::string TruncPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto [i, c] : coeffs_) {
        if (!first) os << "+";
        first = false;
        auto e = ctx_.decode(i);
        bool has_var = false;
        std::ostringstream vars;
        for (uint32_t k = 0; k < ctx_.n; ++k) {
            if (e[k] == 0) continue;
            if (has_var) vars << "*";
            vars << "x" << (k + 1);
            if (e[k] > 1) vars << "^" << e[k];
            has_var = true;
        }
        if (!has_var) {
            os << c;
        } else if (c == 1) {
            os << vars.str();
        } else {
            os << c << "*" << vars.str();
        }
    }
    return os.str();
}

namespace {

struct PolyParser {
    const std::string& s;
    size_t pos = 0;
    MonoCtx ctx;

    explicit PolyParser(const std::string& text, MonoCtx c) : s(text), ctx(c) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    uint32_t parse_uint() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw std::invalid_argument("poly parse: expected number at position " +
                                        std::to_string(pos));
        uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1'000'000'000ull) throw std::invalid_argument("poly parse: number too large");
            ++pos;
        }
        return static_cast<uint32_t>(v);
    }

    // term := factor (* factor)* ; factor := number | xK (^A)?
    TruncPoly parse_term() {
        uint32_t coeff = 1;
        std::vector<uint32_t> exps(ctx.n, 0);
        bool any = false;
        while (true) {
            skip_ws();
            if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                coeff = fp::mul(coeff, parse_uint() % ctx.p, ctx.p);
                any = true;
            } else if (pos < s.size() && s[pos] == 'x') {
                ++pos;
                uint32_t var = parse_uint();
                if (var < 1 || var > ctx.n)
                    throw std::invalid_argument("poly parse: variable x" + std::to_string(var) +
                                                " out of range");
                uint32_t e = 1;
                if (eat('^')) e = parse_uint();
                exps[var - 1] += e;
                if (exps[var - 1] >= ctx.p) {
                    // X^p = 0: whole term vanishes
                    coeff = 0;
                }
                any = true;
            } else {
                break;
            }
            if (!eat('*')) break;
        }
        if (!any) throw std::invalid_argument("poly parse: empty term at position " +
                                              std::to_string(pos));
        TruncPoly t(ctx);
        if (coeff != 0) t.add_term(ctx.encode(exps), coeff);
        return t;
    }

    TruncPoly parse() {
        TruncPoly acc(ctx);
        bool negate = eat('-');
        while (true) {
            TruncPoly t = parse_term();
            acc = negate ? acc - t : acc + t;
            skip_ws();
            if (eat('+')) {
                negate = false;
            } else if (eat('-')) {
                negate = true;
            } else {
                break;
            }
        }
        skip_ws();
        if (pos != s.size())
            throw std::invalid_argument("poly parse: trailing input at position " +
                                        std::to_string(pos));
        return acc;
    }
};

}  // namespace

TruncPoly parse_truncpoly(const std::string& text, uint32_t n, uint32_t p) {
    PolyParser parser(text, MonoCtx(n, p));
    return parser.parse();
}

Derivation::Derivation(MonoCtx ctx, std::vector<TruncPoly> components)
    : ctx_(ctx), comps_(std::move(components)), cache_(std::make_shared<MatrixCache>()) {
    if (comps_.size() != ctx_.n)
        throw std::invalid_argument("Derivation: need exactly n components");
    for (const auto& f : comps_)
        if (!(f.ctx() == ctx_)) throw std::invalid_argument("Derivation: mixed (n,p)");
}

bool Derivation::is_zero() const {
    for (const auto& f : comps_)
        if (!f.is_zero()) return false;
    return true;
}

TruncPoly Derivation::apply(const TruncPoly& f) const {
    TruncPoly out(ctx_);
    for (uint32_t i = 0; i < ctx_.n; ++i) {
        if (comps_[i].is_zero()) continue;
        out = out + comps_[i] * f.partial(i);
    }
    return out;
}

const FpMatrix& Derivation::matrix() const {
    std::call_once(cache_->once, [this] {
        auto m = std::make_shared<FpMatrix>(ctx_.p, ctx_.size(), ctx_.size());
        // column b = coefficients of D(x^b)
        for (uint32_t b = 0; b < ctx_.size(); ++b) {
            auto eb = ctx_.decode(b);
            for (uint32_t i = 0; i < ctx_.n; ++i) {
                if (eb[i] == 0 || comps_[i].is_zero()) continue;
                uint32_t k = eb[i];
                auto shifted = eb;
                shifted[i] -= 1;
                // k * f_i * x^(b - e_i)
                for (auto [ia, ca] : comps_[i].terms()) {
                    auto ea = ctx_.decode(ia);
                    bool dead = false;
                    std::vector<uint32_t> e(ctx_.n);
                    for (uint32_t t = 0; t < ctx_.n; ++t) {
                        e[t] = ea[t] + shifted[t];
                        if (e[t] >= ctx_.p) {
                            dead = true;
                            break;
                        }
                    }
                    if (dead) continue;
                    uint32_t row = ctx_.encode(e);
                    uint32_t add = fp::mul(ca, k % ctx_.p, ctx_.p);
                    m->set(row, b, fp::add((*m)(row, b), add, ctx_.p));
                }
            }
        }
        cache_->m = std::move(m);
    });
    return *cache_->m;
}

FpVec Derivation::component_vector() const {
    FpVec v;
    v.reserve(static_cast<size_t>(ctx_.n) * ctx_.size());
    for (uint32_t i = 0; i < ctx_.n; ++i) {
        FpVec d = comps_[i].dense();
        v.insert(v.end(), d.begin(), d.end());
    }
    return v;
}

std::string Derivation::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (uint32_t i = 0; i < ctx_.n; ++i) {
        if (comps_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << comps_[i].to_string() << ")*d" << (i + 1);
    }
    if (first) os << "0";
    return os.str();
}

FpMatrix derivation_matrix(const Derivation& d) { return d.matrix(); }

std::optional<Derivation> derivation_from_matrix(const MonoCtx& ctx, const FpMatrix& m) {
    if (m.rows() != ctx.size() || m.cols() != ctx.size() || m.p() != ctx.p) return std::nullopt;
    std::vector<TruncPoly> comps;
    comps.reserve(ctx.n);
    for (uint32_t i = 0; i < ctx.n; ++i) {
        std::vector<uint32_t> e(ctx.n, 0);
        e[i] = 1;
        uint32_t col = ctx.encode(e);
        TruncPoly f(ctx);
        for (uint32_t row = 0; row < ctx.size(); ++row) f.add_term(row, m(row, col));
        comps.push_back(std::move(f));
    }
    Derivation d(ctx, std::move(comps));
    if (!(d.matrix() == m)) return std::nullopt;
    return d;
}

}  // namespace rla
