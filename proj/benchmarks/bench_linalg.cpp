#include <benchmark/benchmark.h>

#include <random>

#include "rla/fpmatrix.hpp"

namespace {

rla::FpMatrix random_matrix(uint32_t p, size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    rla::FpMatrix m(p, n, n);
    for (size_t r = 0; r < n; ++r)
        for (size_t c = 0; c < n; ++c) m.set(r, c, static_cast<uint32_t>(rng() % p));
    return m;
}

void BM_rref(benchmark::State& state) {
    auto m = random_matrix(3, state.range(0), 42);
    for (auto _ : state) benchmark::DoNotOptimize(rla::rref(m));
}
BENCHMARK(BM_rref)->Arg(64)->Arg(256)->Arg(1024);

void BM_matmul(benchmark::State& state) {
    auto a = random_matrix(3, state.range(0), 1);
    auto b = random_matrix(3, state.range(0), 2);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_matmul)->Arg(64)->Arg(243);

void BM_mat_p_power(benchmark::State& state) {
    auto m = random_matrix(7, state.range(0), 3);
    for (auto _ : state) benchmark::DoNotOptimize(rla::mat_p_power(m));
}
BENCHMARK(BM_mat_p_power)->Arg(49)->Arg(125);

void BM_kernel(benchmark::State& state) {
    auto m = random_matrix(5, state.range(0), 4);
    // make it singular: duplicate a row
    for (size_t c = 0; c < m.cols(); ++c) m.set(0, c, m(1, c));
    for (auto _ : state) benchmark::DoNotOptimize(rla::kernel_basis(m));
}
BENCHMARK(BM_kernel)->Arg(128)->Arg(512);

void BM_span_solver_solve(benchmark::State& state) {
    const uint32_t p = 3;
    const size_t dim = state.range(0), width = 4 * dim;
    std::mt19937_64 rng(5);
    std::vector<rla::FpVec> rows;
    for (size_t i = 0; i < dim; ++i) {
        rla::FpVec v(width);
        for (auto& c : v) c = static_cast<uint32_t>(rng() % p);
        rows.push_back(std::move(v));
    }
    rla::SpanSolver solver(p, rows, width);
    rla::FpVec target(width, 0);
    rla::vec_add_scaled(target, rows[dim / 2], 2, p);
    rla::vec_add_scaled(target, rows[dim / 3], 1, p);
    for (auto _ : state) benchmark::DoNotOptimize(solver.solve(target));
}
BENCHMARK(BM_span_solver_solve)->Arg(64)->Arg(243);

}  // namespace
