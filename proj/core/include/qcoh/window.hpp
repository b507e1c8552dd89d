#pragma once

#include <vector>

#include "qcoh/qmat.hpp"
#include "qcoh/ring.hpp"

namespace qcoh {

// Inclusive exponent window used whenever an infinite-dimensional space over Q
// has to be handled through a finite slice.
struct ExpWindow {
    long lo = 0, hi = 0;
    bool contains(long e) const { return lo <= e && e <= hi; }
    ExpWindow widen(long below, long above) const { return {lo - below, hi + above}; }
};

// Finite Q-basis of (a window slice of) R^n: monomials x^e in each component,
// with e legal for the ring and inside the window. Provides the translation
// between ring vectors and flat Q-coordinates.
struct WinSpace {
    RingSpec ring;
    std::size_t n = 0;
    std::vector<long> exps; // ascending

    WinSpace() = default;
    WinSpace(RingSpec r, std::size_t comps, ExpWindow w) : ring(std::move(r)), n(comps) {
        for (long e = w.lo; e <= w.hi; ++e)
            if (ring.admits_exponent(e)) exps.push_back(e);
    }

    std::size_t dim() const { return n * exps.size(); }

    std::size_t index(std::size_t comp, std::size_t expidx) const {
        return comp * exps.size() + expidx;
    }

    // Flat coordinates -> ring column vector.
    RingMatrix to_ring(const QMat& coords, std::size_t col = 0) const {
        RingMatrix v(ring, n, 1);
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t k = 0; k < exps.size(); ++k) {
                const Q& q = coords.at(index(c, k), col);
                if (q != 0) v.at(c, 0).set(exps[k], v.at(c, 0).coeff(exps[k]) + q);
            }
        return v;
    }

    // Ring column vector -> flat coordinates; exponents outside the window are
    // reported through `fits`.
    QMat from_ring(const RingMatrix& v, bool* fits = nullptr) const {
        QMat coords(dim(), 1);
        bool ok = true;
        for (std::size_t c = 0; c < n; ++c)
            for (const auto& [e, q] : v.at(c, 0).coeffs()) {
                std::size_t k = 0;
                bool found = false;
                for (; k < exps.size(); ++k)
                    if (exps[k] == e) {
                        found = true;
                        break;
                    }
                if (!found) {
                    ok = false;
                    continue;
                }
                coords.at(index(c, k), 0) = q;
            }
        if (fits) *fits = ok;
        return coords;
    }
};

// Q-matrix of the linear map v -> A*v from `in` to `out` coordinates. Entries
// that fall outside `out` are an error of window sizing (caller widens).
inline QMat mul_map(const RingMatrix& a, const WinSpace& in, const WinSpace& out,
                    bool* fits = nullptr) {
    QMat m(out.dim(), in.dim());
    bool ok = true;
    for (std::size_t col = 0; col < in.dim(); ++col) {
        QMat unit(in.dim(), 1);
        unit.at(col, 0) = 1;
        RingMatrix v = a * in.to_ring(unit);
        bool f = true;
        QMat image = out.from_ring(v, &f);
        ok = ok && f;
        for (std::size_t rrow = 0; rrow < out.dim(); ++rrow) m.at(rrow, col) = image.at(rrow, 0);
    }
    if (fits) *fits = ok;
    return m;
}

// Q-matrix of entrywise application of a ring map (window coordinates on both
// sides).
inline QMat ringmap_map(const RingMap& f, const WinSpace& in, const WinSpace& out,
                        bool* fits = nullptr) {
    QMat m(out.dim(), in.dim());
    bool ok = true;
    for (std::size_t col = 0; col < in.dim(); ++col) {
        QMat unit(in.dim(), 1);
        unit.at(col, 0) = 1;
        RingMatrix v = in.to_ring(unit);
        RingMatrix w(f.target, v.rows(), 1);
        for (std::size_t i = 0; i < v.rows(); ++i) w.at(i, 0) = f.apply(v.at(i, 0));
        bool fit = true;
        QMat image = out.from_ring(w, &fit);
        ok = ok && fit;
        for (std::size_t rrow = 0; rrow < out.dim(); ++rrow) m.at(rrow, col) = image.at(rrow, 0);
    }
    if (fits) *fits = ok;
    return m;
}

} // namespace qcoh
