#include "rla/fpmatrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace rla {

bool vec_is_zero(const FpVec& v) {
    return std::all_of(v.begin(), v.end(), [](uint32_t x) { return x == 0; });
}

void vec_add_scaled(FpVec& r, const FpVec& v, uint32_t c, uint32_t p) {
    if (c == 0) return;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = static_cast<uint32_t>((r[i] + static_cast<uint64_t>(c) * v[i]) % p);
}

FpVec vec_scaled(const FpVec& v, uint32_t c, uint32_t p) {
    FpVec r(v.size(), 0);
    vec_add_scaled(r, v, c, p);
    return r;
}

FpVec vec_add(const FpVec& a, const FpVec& b, uint32_t p) {
    FpVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = fp::add(a[i], b[i], p);
    return r;
}

FpVec vec_sub(const FpVec& a, const FpVec& b, uint32_t p) {
    FpVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = fp::sub(a[i], b[i], p);
    return r;
}

FpMatrix::FpMatrix(uint32_t p, size_t rows, size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    fp::check_modulus(p);
}

FpMatrix FpMatrix::identity(uint32_t p, size_t n) {
    FpMatrix m(p, n, n);
    for (size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
    return m;
}

FpMatrix FpMatrix::from_rows(uint32_t p, const std::vector<FpVec>& rows) {
    size_t cols = rows.empty() ? 0 : rows.front().size();
    FpMatrix m(p, rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("from_rows: ragged rows");
        for (size_t j = 0; j < cols; ++j) m.a_[i * cols + j] = rows[i][j] % p;
    }
    return m;
}

FpVec FpMatrix::row(size_t r) const {
    return FpVec(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
    if (cols_ != rhs.rows_ || p_ != rhs.p_)
        throw std::invalid_argument("FpMatrix: incompatible product");
    FpMatrix out(p_, rows_, rhs.cols_);
    std::vector<uint64_t> acc(rhs.cols_);
    for (size_t i = 0; i < rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        const uint32_t* arow = a_.data() + i * cols_;
        for (size_t k = 0; k < cols_; ++k) {
            uint64_t aik = arow[k];
            if (!aik) continue;
            const uint32_t* brow = rhs.a_.data() + k * rhs.cols_;
            for (size_t j = 0; j < rhs.cols_; ++j) acc[j] += aik * brow[j];
        }
        uint32_t* orow = out.a_.data() + i * rhs.cols_;
        for (size_t j = 0; j < rhs.cols_; ++j) orow[j] = static_cast<uint32_t>(acc[j] % p_);
    }
    return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
        throw std::invalid_argument("FpMatrix: incompatible sum");
    FpMatrix out(p_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = fp::add(a_[i], rhs.a_[i], p_);
    return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_)
        throw std::invalid_argument("FpMatrix: incompatible difference");
    FpMatrix out(p_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = fp::sub(a_[i], rhs.a_[i], p_);
    return out;
}

FpMatrix FpMatrix::scaled(uint32_t c) const {
    FpMatrix out(p_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = fp::mul(a_[i], c % p_, p_);
    return out;
}

bool FpMatrix::is_zero() const { return vec_is_zero(a_); }

FpVec FpMatrix::apply(const FpVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("FpMatrix::apply: size mismatch");
    FpVec out(rows_, 0);
    for (size_t i = 0; i < rows_; ++i) {
        uint64_t acc = 0;
        const uint32_t* arow = a_.data() + i * cols_;
        for (size_t j = 0; j < cols_; ++j) acc += static_cast<uint64_t>(arow[j]) * v[j];
        out[i] = static_cast<uint32_t>(acc % p_);
    }
    return out;
}

RrefResult rref(const FpMatrix& m) {
    RrefResult res;
    res.mat = m;
    const uint32_t p = m.p();
    const size_t rows = m.rows(), cols = m.cols();
    std::vector<FpVec> r(rows);
    for (size_t i = 0; i < rows; ++i) r[i] = res.mat.row(i);

    size_t lead = 0;
    for (size_t col = 0; col < cols && lead < rows; ++col) {
        size_t piv = lead;
        while (piv < rows && r[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(r[piv], r[lead]);
        uint32_t inv = fp::inv(r[lead][col], p);
        for (size_t j = col; j < cols; ++j) r[lead][j] = fp::mul(r[lead][j], inv, p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == lead) continue;
            uint32_t c = r[i][col];
            if (c == 0) continue;
            uint32_t nc = fp::neg(c, p);
            for (size_t j = col; j < cols; ++j)
                r[i][j] = static_cast<uint32_t>((r[i][j] + static_cast<uint64_t>(nc) * r[lead][j]) % p);
        }
        res.pivots.push_back(col);
        ++lead;
    }
    res.rank = res.pivots.size();
    res.mat = FpMatrix::from_rows(p, r);
    return res;
}

std::vector<FpVec> kernel_basis(const FpMatrix& m) {
    const uint32_t p = m.p();
    RrefResult rr = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : rr.pivots) is_pivot[c] = true;

    std::vector<FpVec> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        FpVec v(m.cols(), 0);
        v[f] = 1;
        for (size_t i = 0; i < rr.rank; ++i)
            v[rr.pivots[i]] = fp::neg(rr.mat(i, f), p);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<FpVec> coords_in_span(const std::vector<FpVec>& basis, const FpVec& target,
                                    uint32_t p) {
    SpanSolver s(p, basis);
    if (!s.rows_independent())
        throw DependentBasisError("coords_in_span: basis vectors are dependent");
    return s.solve(target);
}

FpMatrix mat_p_power(const FpMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("mat_p_power: matrix not square");
    uint32_t e = m.p();
    FpMatrix base = m;
    FpMatrix acc = FpMatrix::identity(m.p(), m.rows());
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

std::vector<FpVec> eigenspace(const FpMatrix& m, uint32_t c) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigenspace: matrix not square");
    FpMatrix shifted = m - FpMatrix::identity(m.p(), m.rows()).scaled(c % m.p());
    return kernel_basis(shifted);
}

SpanSolver::SpanSolver(uint32_t p, std::vector<FpVec> rows)
    : SpanSolver(p, std::move(rows), 0) {}

SpanSolver::SpanSolver(uint32_t p, std::vector<FpVec> rows, size_t width)
    : p_(p), nrows_(rows.size()) {
    fp::check_modulus(p);
    width_ = rows.empty() ? width : rows.front().size();
    for (const auto& r : rows)
        if (r.size() != width_) throw std::invalid_argument("SpanSolver: ragged rows");
    r_ = std::move(rows);
    t_.assign(nrows_, FpVec(nrows_, 0));
    for (size_t i = 0; i < nrows_; ++i) t_[i][i] = 1;

    size_t lead = 0;
    for (size_t col = 0; col < width_ && lead < nrows_; ++col) {
        size_t piv = lead;
        while (piv < nrows_ && r_[piv][col] == 0) ++piv;
        if (piv == nrows_) continue;
        std::swap(r_[piv], r_[lead]);
        std::swap(t_[piv], t_[lead]);
        uint32_t inv = fp::inv(r_[lead][col], p_);
        for (auto& x : r_[lead]) x = fp::mul(x, inv, p_);
        for (auto& x : t_[lead]) x = fp::mul(x, inv, p_);
        for (size_t i = 0; i < nrows_; ++i) {
            if (i == lead) continue;
            uint32_t c = r_[i][col];
            if (c == 0) continue;
            uint32_t nc = fp::neg(c, p_);
            vec_add_scaled(r_[i], r_[lead], nc, p_);
            vec_add_scaled(t_[i], t_[lead], nc, p_);
        }
        pivots_.emplace_back(lead, col);
        pivot_cols_.push_back(col);
        ++lead;
    }
}

std::optional<FpVec> SpanSolver::solve(const FpVec& target) const {
    if (target.size() != width_) throw std::invalid_argument("SpanSolver::solve: size mismatch");
    FpVec res = target;
    FpVec cr(nrows_, 0);
    bool any = false;
    for (auto [row, col] : pivots_) {
        uint32_t c = res[col];
        if (c == 0) continue;
        cr[row] = c;
        any = true;
        vec_add_scaled(res, r_[row], fp::neg(c, p_), p_);
    }
    if (!vec_is_zero(res)) return std::nullopt;
    FpVec coords(nrows_, 0);
    if (any)
        for (size_t i = 0; i < nrows_; ++i)
            if (cr[i]) vec_add_scaled(coords, t_[i], cr[i], p_);
    return coords;
}

bool SpanSolver::contains(const FpVec& target) const {
    FpVec res = target;
    reduce_in_place(res);
    return vec_is_zero(res);
}

void SpanSolver::reduce_in_place(FpVec& v) const {
    for (auto [row, col] : pivots_) {
        uint32_t c = v[col];
        if (c == 0) continue;
        vec_add_scaled(v, r_[row], fp::neg(c, p_), p_);
    }
}

std::vector<FpVec> SpanSolver::canonical_rows() const {
    std::vector<FpVec> out;
    out.reserve(pivots_.size());
    for (auto [row, col] : pivots_) out.push_back(r_[row]);
    return out;
}

std::vector<FpVec> canonical_span(uint32_t p, const std::vector<FpVec>& vectors, size_t width) {
    if (vectors.empty()) return {};
    SpanSolver s(p, vectors, width);
    return s.canonical_rows();
}

}  // namespace rla
