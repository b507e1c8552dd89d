#pragma once

#include <functional>
#include <map>
#include <random>

#include "qcoh/fpmodule.hpp"
#include "qcoh/rep.hpp"
#include "qcoh/ring.hpp"

namespace qcoh::testing {

// Deterministic RNG so every test run sees the same "random" cases.
inline std::mt19937& rng() {
    static std::mt19937 gen(20240117u);
    return gen;
}

inline long rand_int(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline Q rand_q() {
    long num = rand_int(-4, 4);
    long den = rand_int(1, 3);
    return Q(num) / Q(den);
}

inline RingElement rand_elem(const RingSpec& r, int max_terms = 3) {
    RingElement x(r);
    int terms = static_cast<int>(rand_int(0, max_terms));
    for (int t = 0; t < terms; ++t) {
        long e = 0;
        if (r.kind == RingSpec::Kind::Laurent) {
            switch (r.window) {
            case Window::NonNeg: e = rand_int(0, 3); break;
            case Window::NonPos: e = rand_int(-3, 0); break;
            case Window::Full: e = rand_int(-2, 2); break;
            }
        }
        x.set(e, x.coeff(e) + rand_q());
    }
    return x;
}

inline RingMatrix rand_matrix(const RingSpec& r, std::size_t rows, std::size_t cols) {
    RingMatrix m(r, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rand_elem(r);
    return m;
}

inline QMat rand_qmat(std::size_t rows, std::size_t cols, long lo = -3, long hi = 3) {
    QMat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Q(rand_int(lo, hi));
    return m;
}

// Is `a` a unit times `b`? Used to sanity-check SNF diagonals.
inline bool associates(const RingElement& a, const RingElement& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    auto [q, r] = RingElement::divmod(a, b);
    return r.is_zero() && q.is_unit();
}

// Random constant-field representation on a poset (used as fuzz input).
// Transitions are drawn on covering pairs and composed along a fixed path for
// the longer pairs, so the result is functorial by construction on posets
// where all paths between two vertices agree after composition (chains, fans).
inline Rep rand_rep(RingRepPtr r, std::size_t maxdim = 2) {
    const auto& poset = r->poset;
    for (int attempt = 0; attempt < 50; ++attempt) {
        Rep x;
        x.rep = r;
        for (std::size_t i = 0; i < poset.size(); ++i)
            x.dims.push_back(static_cast<std::size_t>(rand_int(0, static_cast<long>(maxdim))));
        auto covers = [&](std::size_t i, std::size_t j) {
            if (!poset.less(i, j)) return false;
            for (std::size_t k = 0; k < poset.size(); ++k)
                if (poset.less(i, k) && poset.less(k, j)) return false;
            return true;
        };
        std::map<std::pair<std::size_t, std::size_t>, QMat> cov;
        for (auto [i, j] : poset.strict_pairs())
            if (covers(i, j)) cov[{i, j}] = rand_qmat(x.dims[j], x.dims[i], -2, 2);
        // Compose along the first available intermediate cover.
        std::function<QMat(std::size_t, std::size_t)> t = [&](std::size_t i,
                                                              std::size_t j) -> QMat {
            if (auto it = cov.find({i, j}); it != cov.end()) return it->second;
            for (std::size_t k = 0; k < poset.size(); ++k)
                if (covers(i, k) && poset.less(k, j)) return t(k, j) * cov[{i, k}];
            throw std::runtime_error("rand_rep: disconnected pair");
        };
        for (auto [i, j] : poset.strict_pairs()) x.tr.insert({{i, j}, t(i, j)});
        if (x.valid()) return x;
    }
    throw std::runtime_error("rand_rep: no valid representation found");
}

} // namespace qcoh::testing
