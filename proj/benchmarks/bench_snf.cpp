// Smith normal form and exact rational linear algebra.

#include <benchmark/benchmark.h>

#include <random>

#include "qcoh/ring.hpp"

using namespace qcoh;

namespace {

RingMatrix random_poly_matrix(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> coeff(-3, 3);
    std::uniform_int_distribution<long> deg(0, 2);
    RingSpec r = RingSpec::poly("x");
    RingMatrix m(r, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RingElement e(r);
            long d = deg(rng);
            for (long k = 0; k <= d; ++k) e.set(k, Q(coeff(rng)));
            m.at(i, j) = e;
        }
    return m;
}

QMat random_qmat(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<long> coeff(-5, 5);
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.at(i, j) = Q(coeff(rng));
    return m;
}

void BM_snf_poly(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    RingMatrix m = random_poly_matrix(n, 7u + static_cast<unsigned>(n));
    for (auto _ : state) {
        auto res = snf(m);
        benchmark::DoNotOptimize(res.D);
    }
}
BENCHMARK(BM_snf_poly)->Arg(3)->Arg(4)->Arg(5);

void BM_solve_linear_poly(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    RingMatrix a = random_poly_matrix(n, 11u + static_cast<unsigned>(n));
    RingMatrix x = random_poly_matrix(n, 13u);
    RingMatrix b = a * x.submatrix(0, 0, n, 1);
    for (auto _ : state) {
        auto sol = solve_linear(a, b);
        benchmark::DoNotOptimize(sol);
    }
}
BENCHMARK(BM_solve_linear_poly)->Arg(3)->Arg(5);

void BM_qmat_rank(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    QMat m = random_qmat(n, 17u + static_cast<unsigned>(n));
    for (auto _ : state) benchmark::DoNotOptimize(m.rank());
}
BENCHMARK(BM_qmat_rank)->Arg(8)->Arg(16)->Arg(32);

void BM_qmat_kernel(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    QMat m = random_qmat(n, 19u);
    // Force a nontrivial kernel by duplicating half the columns.
    for (std::size_t j = 0; j + n / 2 < n; ++j)
        for (std::size_t i = 0; i < n; ++i) m.at(i, j + n / 2) = m.at(i, j);
    for (auto _ : state) benchmark::DoNotOptimize(m.kernel());
}
BENCHMARK(BM_qmat_kernel)->Arg(8)->Arg(16)->Arg(32);

} // namespace
