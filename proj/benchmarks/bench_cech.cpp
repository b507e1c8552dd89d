// Cech resolutions and twist cohomology on the projective line.

#include <benchmark/benchmark.h>

#include "qcoh/cech.hpp"
#include "qcoh/p1.hpp"

using namespace qcoh;

namespace {

void BM_cech_resolution(benchmark::State& state) {
    long d = state.range(0);
    SemilatticeRep s = make_semilattice(p1_ringrep());
    std::vector<std::size_t> cover{s.rep->poset.index("u0"), s.rep->poset.index("u1")};
    DiagModule m = p1_twist(d);
    for (auto _ : state) {
        CechComplex c = cech_resolution(s, m, cover);
        benchmark::DoNotOptimize(c.length());
    }
}
BENCHMARK(BM_cech_resolution)->Arg(0)->Arg(3)->Arg(-3);

void BM_cech_certificate(benchmark::State& state) {
    long d = state.range(0);
    SemilatticeRep s = make_semilattice(p1_ringrep());
    std::vector<std::size_t> cover{s.rep->poset.index("u0"), s.rep->poset.index("u1")};
    CechComplex c = cech_resolution(s, p1_twist(d), cover);
    for (auto _ : state) benchmark::DoNotOptimize(cech_certificate(c).size());
}
BENCHMARK(BM_cech_certificate)->Arg(0)->Arg(3)->Arg(-3);

void BM_cohomology_twist(benchmark::State& state) {
    long d = state.range(0);
    SemilatticeRep s = make_semilattice(p1_ringrep());
    std::vector<std::size_t> cover{s.rep->poset.index("u0"), s.rep->poset.index("u1")};
    DiagModule m = p1_twist(d);
    for (auto _ : state) {
        CohomologyTable t = cohomology(s, m, cover);
        benchmark::DoNotOptimize(t.total(0) + t.total(1));
    }
}
BENCHMARK(BM_cohomology_twist)->Arg(5)->Arg(-5);

void BM_hom_twists(benchmark::State& state) {
    long n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(hom_twists(0, n));
}
BENCHMARK(BM_hom_twists)->Arg(1)->Arg(3);

} // namespace

BENCHMARK_MAIN();
