#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rla/fp.hpp"

namespace rla {

// Coordinate vector over F_p; entries are canonical residues. The modulus
// travels with the surrounding context (matrix, algebra, solver).
using FpVec = std::vector<uint32_t>;

bool vec_is_zero(const FpVec& v);
// r += c * v (mod p)
void vec_add_scaled(FpVec& r, const FpVec& v, uint32_t c, uint32_t p);
FpVec vec_scaled(const FpVec& v, uint32_t c, uint32_t p);
FpVec vec_add(const FpVec& a, const FpVec& b, uint32_t p);
FpVec vec_sub(const FpVec& a, const FpVec& b, uint32_t p);

// Dense row-major matrix over F_p. Dimensions at desk scale (<= ~1250), where
// cubic elimination is comfortable; no sparse storage on purpose.
class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(uint32_t p, size_t rows, size_t cols);

    static FpMatrix identity(uint32_t p, size_t n);
    static FpMatrix from_rows(uint32_t p, const std::vector<FpVec>& rows);

    uint32_t p() const { return p_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint32_t operator()(size_t r, size_t c) const { return a_[r * cols_ + c]; }
    void set(size_t r, size_t c, uint32_t v) { a_[r * cols_ + c] = v % p_; }

    const FpVec& data() const { return a_; }
    FpVec row(size_t r) const;

    FpMatrix operator*(const FpMatrix& rhs) const;
    FpMatrix operator+(const FpMatrix& rhs) const;
    FpMatrix operator-(const FpMatrix& rhs) const;
    FpMatrix scaled(uint32_t c) const;
    bool operator==(const FpMatrix& rhs) const = default;

    bool is_zero() const;
    // M * v
    FpVec apply(const FpVec& v) const;

private:
    uint32_t p_ = 3;
    size_t rows_ = 0, cols_ = 0;
    FpVec a_;
};

struct RrefResult {
    FpMatrix mat;
    size_t rank = 0;
    std::vector<size_t> pivots;  // pivot column per nonzero row
};

// Reduced row-echelon form with deterministic first-nonzero pivoting.
RrefResult rref(const FpMatrix& m);

// Basis of {v : M v = 0}; one canonical vector per free column, ordered by
// free-column index.
std::vector<FpVec> kernel_basis(const FpMatrix& m);

// Coefficients c with sum c_i * basis_i = target, if target is in the span.
// The basis must be linearly independent.
std::optional<FpVec> coords_in_span(const std::vector<FpVec>& basis, const FpVec& target,
                                    uint32_t p);

// M^p by square-and-multiply on the binary expansion of p.
FpMatrix mat_p_power(const FpMatrix& m);

// Basis of ker(M - cI).
std::vector<FpVec> eigenspace(const FpMatrix& m, uint32_t c);

struct DependentBasisError : std::runtime_error {
    explicit DependentBasisError(const std::string& what) : std::runtime_error(what) {}
};

// Repeated-solve helper: fixes a list of basis vectors (as rows) and answers
// span-membership / coordinate queries against them. Keeps the rref R of the
// row matrix B together with the transform T (R = T B), so each solve costs
// one reduction pass plus a sparse recombination.
class SpanSolver {
public:
    SpanSolver() = default;
    SpanSolver(uint32_t p, std::vector<FpVec> rows);
    SpanSolver(uint32_t p, std::vector<FpVec> rows, size_t width);

    uint32_t p() const { return p_; }
    size_t width() const { return width_; }
    size_t nrows() const { return nrows_; }
    size_t rank() const { return pivots_.size(); }
    bool rows_independent() const { return rank() == nrows_; }

    // Coefficients in the original rows; nullopt if target is outside the span.
    std::optional<FpVec> solve(const FpVec& target) const;
    bool contains(const FpVec& target) const;

    // Reduces v in place against the rref rows (v becomes the residual).
    void reduce_in_place(FpVec& v) const;

    // Canonical rref rows (nonzero ones) spanning the same space.
    std::vector<FpVec> canonical_rows() const;
    const std::vector<size_t>& pivot_columns() const { return pivot_cols_; }

private:
    uint32_t p_ = 3;
    size_t width_ = 0, nrows_ = 0;
    std::vector<FpVec> r_;                        // rref rows
    std::vector<FpVec> t_;                        // transform, R = T B
    std::vector<std::pair<size_t, size_t>> pivots_;  // (row, col)
    std::vector<size_t> pivot_cols_;
};

// Canonicalize a spanning set: rref rows of the stacked vectors.
std::vector<FpVec> canonical_span(uint32_t p, const std::vector<FpVec>& vectors, size_t width);

}  // namespace rla
