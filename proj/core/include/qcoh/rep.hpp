#pragma once

#include <map>
#include <vector>

#include "qcoh/diagram.hpp"
#include "qcoh/qmat.hpp"

namespace qcoh {

// Finite-dimensional representation of a finite poset over Q (the constant
// field diagram): the desk-scale exact category behind the homological engine.
// This is the same data as a DiagModule over the constant field representation,
// stored in plain linear-algebra form.
struct Rep {
    RingRepPtr rep; // constant-field ring diagram (shared for context)
    std::vector<std::size_t> dims;
    std::map<std::pair<std::size_t, std::size_t>, QMat> tr; // strict i < j

    QMat t(std::size_t i, std::size_t j) const {
        if (i == j) return QMat::identity(dims[i]);
        auto it = tr.find({i, j});
        if (it == tr.end()) throw Error(ErrorKind::Internal, "missing Rep transition");
        return it->second;
    }

    std::size_t qdim() const {
        std::size_t d = 0;
        for (auto x : dims) d += x;
        return d;
    }
    bool is_zero() const { return qdim() == 0; }
    std::size_t nv() const { return dims.size(); }

    bool valid() const {
        const auto& poset = rep->poset;
        for (auto [i, j] : poset.strict_pairs()) {
            const QMat& m = t(i, j);
            if (m.rows() != dims[j] || m.cols() != dims[i]) return false;
            for (std::size_t k = 0; k < poset.size(); ++k)
                if (poset.less(j, k) && !(t(i, k) == t(j, k) * m)) return false;
        }
        return true;
    }
};

inline Rep rep_zero(RingRepPtr r) {
    Rep x;
    x.rep = r;
    x.dims.assign(r->poset.size(), 0);
    for (auto [i, j] : r->poset.strict_pairs()) x.tr.insert({{i, j}, QMat(0, 0)});
    return x;
}

// Per-vertex linear maps commuting with the transitions.
struct RepMor {
    Rep src, tgt;
    std::vector<QMat> f;

    bool valid() const {
        for (auto [i, j] : src.rep->poset.strict_pairs())
            if (!(f[j] * src.t(i, j) == tgt.t(i, j) * f[i])) return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& m : f)
            if (!m.is_zero()) return false;
        return true;
    }
    bool vertexwise_mono() const {
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i].rank() != src.dims[i]) return false;
        return true;
    }
    bool vertexwise_epi() const {
        for (std::size_t i = 0; i < f.size(); ++i)
            if (f[i].rank() != tgt.dims[i]) return false;
        return true;
    }
};

inline RepMor rep_id(const Rep& x) {
    RepMor m{x, x, {}};
    for (auto d : x.dims) m.f.push_back(QMat::identity(d));
    return m;
}

inline RepMor rep_zero_mor(const Rep& a, const Rep& b) {
    RepMor m{a, b, {}};
    for (std::size_t i = 0; i < a.nv(); ++i) m.f.push_back(QMat(b.dims[i], a.dims[i]));
    return m;
}

inline RepMor rep_compose(const RepMor& g, const RepMor& f) {
    RepMor h{f.src, g.tgt, {}};
    for (std::size_t i = 0; i < f.f.size(); ++i) h.f.push_back(g.f[i] * f.f[i]);
    return h;
}

inline RepMor rep_add(const RepMor& a, const RepMor& b) {
    RepMor h{a.src, a.tgt, {}};
    for (std::size_t i = 0; i < a.f.size(); ++i) h.f.push_back(a.f[i] + b.f[i]);
    return h;
}

inline RepMor rep_sub(const RepMor& a, const RepMor& b) {
    RepMor h{a.src, a.tgt, {}};
    for (std::size_t i = 0; i < a.f.size(); ++i) h.f.push_back(a.f[i] - b.f[i]);
    return h;
}

inline RepMor rep_scale(const Q& c, const RepMor& a) {
    RepMor h{a.src, a.tgt, {}};
    for (std::size_t i = 0; i < a.f.size(); ++i) h.f.push_back(a.f[i] * c);
    return h;
}

struct RepSum {
    Rep obj;
    RepMor inl, inr, prl, prr;
};

inline RepSum rep_direct_sum(const Rep& a, const Rep& b) {
    Rep s;
    s.rep = a.rep;
    for (std::size_t i = 0; i < a.nv(); ++i) s.dims.push_back(a.dims[i] + b.dims[i]);
    for (auto [i, j] : a.rep->poset.strict_pairs()) {
        QMat m(s.dims[j], s.dims[i]);
        QMat ta = a.t(i, j), tb = b.t(i, j);
        for (std::size_t r = 0; r < ta.rows(); ++r)
            for (std::size_t c = 0; c < ta.cols(); ++c) m.at(r, c) = ta.at(r, c);
        for (std::size_t r = 0; r < tb.rows(); ++r)
            for (std::size_t c = 0; c < tb.cols(); ++c)
                m.at(ta.rows() + r, ta.cols() + c) = tb.at(r, c);
        s.tr.insert({{i, j}, m});
    }
    RepSum out{s, {a, s, {}}, {b, s, {}}, {s, a, {}}, {s, b, {}}};
    for (std::size_t i = 0; i < a.nv(); ++i) {
        QMat il(s.dims[i], a.dims[i]), ir(s.dims[i], b.dims[i]);
        QMat pl(a.dims[i], s.dims[i]), pr(b.dims[i], s.dims[i]);
        for (std::size_t k = 0; k < a.dims[i]; ++k) {
            il.at(k, k) = 1;
            pl.at(k, k) = 1;
        }
        for (std::size_t k = 0; k < b.dims[i]; ++k) {
            ir.at(a.dims[i] + k, k) = 1;
            pr.at(k, a.dims[i] + k) = 1;
        }
        out.inl.f.push_back(il);
        out.inr.f.push_back(ir);
        out.prl.f.push_back(pl);
        out.prr.f.push_back(pr);
    }
    return out;
}

// Kernel as a subrepresentation with its inclusion.
RepMor rep_kernel(const RepMor& f);
// Cokernel with its projection.
RepMor rep_cokernel(const RepMor& f);

// Basis of Hom(a, b): commuting families of vertex maps.
std::vector<RepMor> rep_hom(const Rep& a, const Rep& b);

// Pushout of C <-g- A -f-> B and pullback of B -f-> D <-g- C.
struct RepPushout {
    Rep obj;
    RepMor from_b, from_c; // the cocone legs
};
RepPushout rep_pushout(const RepMor& f, const RepMor& g);

struct RepPullback {
    Rep obj;
    RepMor to_b, to_c; // the cone legs
};
RepPullback rep_pullback(const RepMor& f, const RepMor& g);

// Flat Q-coordinates for morphisms a -> b (concatenated vec of vertex blocks).
std::size_t rep_mor_dim(const Rep& a, const Rep& b);
QMat rep_mor_coords(const RepMor& m);
RepMor rep_mor_from_coords(const Rep& a, const Rep& b, const QMat& coords, std::size_t col = 0);

// Projective generator P_i and the standard projective presentation.
Rep rep_projective(RingRepPtr r, std::size_t i);
struct RepPresentation {
    Rep p;
    RepMor epi;            // p ->> x
    RepMor ker_incl;       // syzygy -> p
    std::vector<std::size_t> summands; // vertex index of each P_i summand, in order
};
RepPresentation rep_presentation(const Rep& x);

bool rep_isomorphic(const Rep& a, const Rep& b, unsigned seed = 1);

// Conversions to/from the general diagram-module form (constant field reps).
DiagModule rep_to_diag(const Rep& x);
Rep diag_to_rep(const DiagModule& m);
RepMor diag_to_rep_mor(const DiagMorphism& f);

} // namespace qcoh
