#include <benchmark/benchmark.h>

#include "rla/tori.hpp"

namespace {

void BM_build_W2_p3(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(rla::build_W(2, 3));
}
BENCHMARK(BM_build_W2_p3);

void BM_build_K3_p5(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(rla::build_K_family(3, 5));
}
BENCHMARK(BM_build_K3_p5)->Unit(benchmark::kMillisecond);

void BM_build_K5_p3(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(rla::build_K_family(5, 3));
}
BENCHMARK(BM_build_K5_p3)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_rank_K5_p3(benchmark::State& state) {
    rla::FamilySpec spec{rla::Family::Kpp, 5, 3};
    rla::Algebra g = rla::build_family(spec);
    rla::Torus t = rla::registered_torus_of(spec, g);
    for (auto _ : state) benchmark::DoNotOptimize(rla::torus_centralizer(g, t));
}
BENCHMARK(BM_rank_K5_p3)->Unit(benchmark::kMillisecond);

void BM_weights_K3_p5(benchmark::State& state) {
    rla::FamilySpec spec{rla::Family::K, 3, 5};
    rla::Algebra g = rla::build_family(spec);
    rla::Torus t = rla::registered_torus_of(spec, g);
    for (auto _ : state)
        benchmark::DoNotOptimize(rla::adjoint_weight_decomposition(g, t));
}
BENCHMARK(BM_weights_K3_p5)->Unit(benchmark::kMillisecond);

void BM_brute_force_mu_H2_p3(benchmark::State& state) {
    rla::Algebra h = rla::build_family(rla::FamilySpec{rla::Family::H, 2, 3});
    for (auto _ : state) benchmark::DoNotOptimize(rla::brute_force_mu(h, 2));
}
BENCHMARK(BM_brute_force_mu_H2_p3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
