// Ext computations and the small object argument on chain-poset
// representations.

#include <benchmark/benchmark.h>

#include <random>

#include "qcoh/model.hpp"

using namespace qcoh;

namespace {

Rep random_rep(RingRepPtr r, unsigned seed, std::size_t maxdim) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> dim(0, maxdim);
    std::uniform_int_distribution<long> coeff(-2, 2);
    std::size_t n = r->poset.size();
    Rep x;
    x.rep = r;
    x.dims.resize(n);
    for (std::size_t i = 0; i < n; ++i) x.dims[i] = dim(rng);
    // On a chain, any choice of consecutive maps is functorial; fill the rest
    // by composing.
    std::vector<QMat> step(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        QMat m(x.dims[i + 1], x.dims[i]);
        for (std::size_t a = 0; a < m.rows(); ++a)
            for (std::size_t b = 0; b < m.cols(); ++b) m.at(a, b) = Q(coeff(rng));
        step[i] = m;
    }
    for (std::size_t i = 0; i < n; ++i) {
        QMat acc = QMat::identity(x.dims[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            acc = step[j - 1] * acc;
            x.tr.insert({{i, j}, acc});
        }
    }
    return x;
}

void BM_ext1_chain(benchmark::State& state) {
    auto len = static_cast<std::size_t>(state.range(0));
    RingRepPtr r = constant_field_rep(FinitePoset::chain(len));
    Rep a = random_rep(r, 101, 3), b = random_rep(r, 202, 3);
    for (auto _ : state) benchmark::DoNotOptimize(ext1<RepCat>(a, b).dim);
}
BENCHMARK(BM_ext1_chain)->Arg(2)->Arg(4)->Arg(6);

void BM_rep_hom_chain(benchmark::State& state) {
    auto len = static_cast<std::size_t>(state.range(0));
    RingRepPtr r = constant_field_rep(FinitePoset::chain(len));
    Rep a = random_rep(r, 303, 3), b = random_rep(r, 404, 3);
    for (auto _ : state) benchmark::DoNotOptimize(rep_hom(a, b).size());
}
BENCHMARK(BM_rep_hom_chain)->Arg(2)->Arg(4)->Arg(6);

void BM_first_approximation(benchmark::State& state) {
    auto len = static_cast<std::size_t>(state.range(0));
    RingRepPtr r = constant_field_rep(FinitePoset::chain(len));
    std::vector<Rep> s;
    for (std::size_t i = 0; i < len; ++i) {
        Rep x;
        x.rep = r;
        x.dims.assign(len, 0);
        x.dims[i] = 1;
        for (auto [a, b] : r->poset.strict_pairs())
            x.tr.insert({{a, b}, QMat(x.dims[b], x.dims[a])});
        s.push_back(x);
    }
    Rep x = random_rep(r, 505, 2);
    auto gens = generating_inflations_for_set<RepCat>(RepCat::generator(x), s);
    for (auto _ : state) {
        auto out = first_approximation<RepCat>(gens, x);
        benchmark::DoNotOptimize(out.first.i.tgt.qdim());
    }
}
BENCHMARK(BM_first_approximation)->Arg(2)->Arg(3);

} // namespace
