#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rla/fpmatrix.hpp"

namespace rla {

// Monomial bookkeeping for A(n) = k[X_1..X_n]/(X_i^p). Monomials are indexed
// by their rank in the global lexicographic order on exponent tuples
// (first variable most significant); every coordinate vector in the library
// uses this order.
struct MonoCtx {
    uint32_t p = 3;
    uint32_t n = 1;

    MonoCtx() = default;
    MonoCtx(uint32_t n_vars, uint32_t prime);

    size_t size() const { return size_; }  // p^n

    std::vector<uint32_t> decode(uint32_t index) const;
    uint32_t encode(const std::vector<uint32_t>& exps) const;
    uint32_t exponent(uint32_t index, uint32_t var) const;  // var in [0, n)

    bool operator==(const MonoCtx&) const = default;

private:
    size_t size_ = 3;
    std::vector<uint32_t> stride_;  // p^(n-1-i)
};

// Ordered list of all exponent tuples, length p^n.
std::vector<std::vector<uint32_t>> monomial_basis(uint32_t n, uint32_t p);

// Sparse element of A(n): exponent index -> nonzero coefficient.
class TruncPoly {
public:
    TruncPoly() = default;
    explicit TruncPoly(MonoCtx ctx) : ctx_(ctx) {}

    static TruncPoly constant(MonoCtx ctx, uint32_t c);
    static TruncPoly variable(MonoCtx ctx, uint32_t var);  // x_{var+1}
    static TruncPoly monomial(MonoCtx ctx, const std::vector<uint32_t>& exps, uint32_t c = 1);

    const MonoCtx& ctx() const { return ctx_; }
    uint32_t p() const { return ctx_.p; }
    bool is_zero() const { return coeffs_.empty(); }
    size_t term_count() const { return coeffs_.size(); }
    const std::map<uint32_t, uint32_t>& terms() const { return coeffs_; }

    uint32_t coeff(uint32_t index) const;
    void add_term(uint32_t index, uint32_t c);

    TruncPoly operator+(const TruncPoly& rhs) const;
    TruncPoly operator-(const TruncPoly& rhs) const;
    TruncPoly scaled(uint32_t c) const;
    // Product with exponents >= p truncated away.
    TruncPoly operator*(const TruncPoly& rhs) const;
    bool operator==(const TruncPoly& rhs) const = default;

    // Formal partial derivative with respect to x_{var+1}, var in [0, n).
    TruncPoly partial(uint32_t var) const;

    FpVec dense() const;
    static TruncPoly from_dense(MonoCtx ctx, const FpVec& coeffs);

    std::string to_string() const;

private:
    MonoCtx ctx_;
    std::map<uint32_t, uint32_t> coeffs_;
};

// Parse the CLI text form: a signed sum of terms `c*x1^a1*...*xn^an`,
// e.g. "1+x3", "x1*x2", "2*x1^2-x2".
TruncPoly parse_truncpoly(const std::string& text, uint32_t n, uint32_t p);

// Derivation D = sum f_i d_i of A(n), determined by its components
// f_i = D(x_i). The matrix of the action on the monomial basis is cached on
// first use; brackets and p-th powers are matrix operations downstream.
class Derivation {
public:
    Derivation() = default;
    Derivation(MonoCtx ctx, std::vector<TruncPoly> components);

    const MonoCtx& ctx() const { return ctx_; }
    const std::vector<TruncPoly>& components() const { return comps_; }
    bool is_zero() const;

    TruncPoly apply(const TruncPoly& f) const;
    const FpMatrix& matrix() const;

    // Components stacked as one dense vector of length n * p^n; faithful
    // signature of the derivation (it is determined by the images of the x_i).
    FpVec component_vector() const;

    std::string to_string() const;

private:
    struct MatrixCache {
        std::once_flag once;
        std::shared_ptr<const FpMatrix> m;
    };

    MonoCtx ctx_;
    std::vector<TruncPoly> comps_;
    std::shared_ptr<MatrixCache> cache_;
};

FpMatrix derivation_matrix(const Derivation& d);

// Reads a derivation off an arbitrary matrix acting on the monomial basis:
// extracts candidate components from the generator columns and accepts only
// if rebuilding reproduces the matrix exactly.
std::optional<Derivation> derivation_from_matrix(const MonoCtx& ctx, const FpMatrix& m);

}  // namespace rla
