#include "qcoh/cech.hpp"

#include <algorithm>
#include <sstream>

#include "qcoh/p1.hpp"
#include "qcoh/window.hpp"

namespace qcoh {

namespace {

std::string triple_label(const FinitePoset& p, std::size_t x, std::size_t y, std::size_t z) {
    return p.label(x) + " <= " + p.label(y) + ", " + p.label(x) + " <= " + p.label(z);
}

// Smallest window containing both operands.
Window window_hull(Window a, Window b) { return a == b ? a : Window::Full; }

} // namespace

SemilatticeRep make_semilattice(RingRepPtr rep) {
    const FinitePoset& poset = rep->poset;
    const std::size_t n = poset.size();
    SemilatticeRep s;
    s.rep = rep;
    s.join.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto v = poset.join(i, j);
            if (!v)
                throw Error(ErrorKind::CoverInvalid, "no least upper bound for " + poset.label(i) +
                                                         " and " + poset.label(j));
            s.join[i][j] = *v;
        }
    // Continuity: R(y) (x)_{R(x)} R(z) -> R(y v z) bijective for x <= y, x <= z.
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = y; z < n; ++z) {
                if (!poset.leq(x, y) || !poset.leq(x, z)) continue;
                if (x == y || x == z) continue; // tensor over R(x) with R(x) itself
                std::size_t j = s.join[y][z];
                const RingSpec &rx = rep->ring(x), &ry = rep->ring(y), &rz = rep->ring(z),
                               &rj = rep->ring(j);
                if (rx.kind == RingSpec::Kind::Opaque || ry.kind == RingSpec::Kind::Opaque ||
                    rz.kind == RingSpec::Kind::Opaque || rj.kind == RingSpec::Kind::Opaque)
                    continue; // data only; nothing to verify
                if (ry.kind == RingSpec::Kind::Field && rz.kind == RingSpec::Kind::Field) {
                    if (rj.kind != RingSpec::Kind::Field)
                        s.continuity.push_back("join ring is not the base field at " +
                                               triple_label(poset, x, y, z));
                    continue;
                }
                if (rx.kind == RingSpec::Kind::Field &&
                    ry.kind == RingSpec::Kind::Laurent && rz.kind == RingSpec::Kind::Laurent) {
                    // Two polynomial algebras over the field tensor to a
                    // two-variable ring; never one of ours.
                    s.continuity.push_back("tensor over the field is multivariate at " +
                                           triple_label(poset, x, y, z));
                    continue;
                }
                if (rx.kind == RingSpec::Kind::Field) {
                    const RingSpec& big = ry.kind == RingSpec::Kind::Laurent ? ry : rz;
                    if (!(rj == big))
                        s.continuity.push_back("join ring differs from the nontrivial factor at " +
                                               triple_label(poset, x, y, z));
                    continue;
                }
                // All Laurent over a Laurent base: both legs are localizations
                // when the windows only widen and the variable is shared.
                if (ry.var != rx.var || rz.var != rx.var || rj.var != rx.var) {
                    s.continuity.push_back("variable mismatch at " + triple_label(poset, x, y, z));
                    continue;
                }
                if (rep->edge(x, y).cert == RingMap::Cert::VarSwap ||
                    rep->edge(x, z).cert == RingMap::Cert::VarSwap) {
                    s.continuity.push_back("continuity not verifiable across a variable swap at " +
                                           triple_label(poset, x, y, z));
                    continue;
                }
                if (rj.window != window_hull(ry.window, rz.window))
                    s.continuity.push_back("join window is not the hull of the factors at " +
                                           triple_label(poset, x, y, z));
            }
    return s;
}

FPModule inverse_image(const SemilatticeRep&, std::size_t x, const DiagModule& m) {
    return m.vertex[x];
}

RingRepPtr pushforward_ringrep(const SemilatticeRep& s, std::size_t x) {
    std::vector<RingSpec> rings;
    for (std::size_t y = 0; y < s.rep->poset.size(); ++y)
        rings.push_back(s.rep->ring(s.join[x][y]));
    return std::make_shared<RingRep>(s.rep->poset, rings);
}

DiagModule direct_image(const SemilatticeRep& s, std::size_t x, const FPModule& n) {
    if (!(n.ring == s.rep->ring(x)))
        throw Error(ErrorKind::Internal, "direct_image: the module is not presented over R(x)");
    n.ring.require_euclidean();
    RingRepPtr pf = pushforward_ringrep(s, x);
    DiagModule out;
    out.rep = pf;
    for (std::size_t y = 0; y < pf->poset.size(); ++y)
        out.vertex.push_back(base_change(n, s.rep->edge(x, s.join[x][y])));
    for (auto [y, z] : pf->poset.strict_pairs())
        out.trans.insert({{y, z}, RingMatrix::identity(pf->ring(z), n.gens)});
    return out;
}

namespace {

// unit[y]: solve T_{x,xvy} * A = T_{y,xvy} modulo the relations at x v y; the
// generators of (F_x* M(x))(y) are those of M(x).
std::vector<RingMatrix> compute_unit(const SemilatticeRep& s, std::size_t x, const DiagModule& m,
                                     std::vector<std::string>& violations,
                                     const std::string& what) {
    const std::size_t nv = s.rep->poset.size();
    std::vector<RingMatrix> unit;
    for (std::size_t y = 0; y < nv; ++y) {
        std::size_t j = s.join[x][y];
        RingMatrix tx = m.transition(x, j);
        RingMatrix ty = m.transition(y, j);
        RingMatrix a(tx.ring(), m.vertex[x].gens, m.vertex[y].gens);
        if (ty.cols() > 0 && tx.cols() + m.vertex[j].rel.cols() > 0) {
            auto sol = solve_linear(RingMatrix::hcat(tx, m.vertex[j].rel), ty);
            if (!sol)
                violations.push_back(what + " unit does not exist at vertex " +
                                     s.rep->poset.label(y) + " (module not quasi-coherent there)");
            else
                a = sol->submatrix(0, 0, m.vertex[x].gens, m.vertex[y].gens);
        }
        unit.push_back(a);
    }
    return unit;
}

bool congruent_mod(const FPModule& m, const RingMatrix& a, const RingMatrix& b) {
    RingMatrix d = a - b;
    for (std::size_t c = 0; c < d.cols(); ++c)
        if (!m.relation_member(d.column(c))) return false;
    return true;
}

} // namespace

AdjunctionWitness adjunction_witness(const SemilatticeRep& s, std::size_t x, const DiagModule& m) {
    AdjunctionWitness w;
    w.monad = direct_image(s, x, m.vertex[x]);
    w.unit = compute_unit(s, x, m, w.violations, "module");
    w.counit = RingMatrix::identity(s.rep->ring(x), m.vertex[x].gens);
    const FinitePoset& poset = s.rep->poset;

    // Triangle at the evaluated vertex: counit after the evaluated unit is the
    // identity of M(x).
    if (!congruent_mod(m.vertex[x], w.counit * w.unit[x],
                       RingMatrix::identity(s.rep->ring(x), m.vertex[x].gens)))
        w.violations.push_back("triangle identity on the inverse image fails at " + poset.label(x));

    // Triangle on the direct image: the unit of the monad followed by the
    // pushed-forward counit is the identity at every vertex.
    std::vector<RingMatrix> monad_unit = compute_unit(s, x, w.monad, w.violations, "monad");
    for (std::size_t y = 0; y < poset.size(); ++y)
        if (!congruent_mod(w.monad.vertex[y], monad_unit[y],
                           RingMatrix::identity(monad_unit[y].ring(), w.monad.vertex[y].gens)))
            w.violations.push_back("triangle identity on the direct image fails at " +
                                   poset.label(y));

    // Naturality of the unit along the poset.
    for (auto [y, z] : poset.strict_pairs()) {
        std::size_t jy = s.join[x][y], jz = s.join[x][z];
        RingMap into = s.rep->edge(jy, jz);
        RingMatrix lhs = w.unit[z] * m.transition(y, z).map(s.rep->edge(z, jz));
        RingMatrix rhs = w.unit[y].map(into);
        if (!congruent_mod(w.monad.vertex[z], lhs, rhs))
            w.violations.push_back("unit is not natural along " + poset.label(y) + " <= " +
                                   poset.label(z));
    }
    return w;
}

std::size_t CechComplex::join_at(std::size_t z, const std::vector<std::size_t>& t) const {
    std::size_t j = z;
    for (std::size_t i : t) j = srep.join[j][cover[i]];
    return j;
}

namespace {

void check_cover(const SemilatticeRep& s, const std::vector<std::size_t>& cover) {
    const std::size_t n = s.rep->poset.size();
    if (cover.empty()) throw Error(ErrorKind::CoverInvalid, "empty cover");
    if (cover.size() > 16) throw Error(ErrorKind::CoverInvalid, "cover too large to validate");
    for (std::size_t c : cover)
        if (c >= n) throw Error(ErrorKind::CoverInvalid, "cover element out of range");
    std::vector<bool> reachable(n, false);
    for (std::size_t mask = 1; mask < (1u << cover.size()); ++mask) {
        std::optional<std::size_t> j;
        for (std::size_t k = 0; k < cover.size(); ++k)
            if (mask & (1u << k)) j = j ? s.join[*j][cover[k]] : cover[k];
        reachable[*j] = true;
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!reachable[v])
            throw Error(ErrorKind::CoverInvalid, "vertex " + s.rep->poset.label(v) +
                                                     " is not a join of cover elements");
}

} // namespace

CechComplex cech_resolution(const SemilatticeRep& s, const DiagModule& m,
                            std::vector<std::size_t> cover) {
    check_cover(s, cover);
    CechComplex c;
    c.srep = s;
    c.m = m;
    c.cover = std::move(cover);
    const std::size_t n = c.cover.size();
    c.tuples.resize(n);
    // Sorted (p+1)-subsets of {0..n-1}, in lexicographic order per degree.
    for (std::size_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> t;
        for (std::size_t k = 0; k < n; ++k)
            if (mask & (1u << k)) t.push_back(k);
        c.tuples[t.size() - 1].push_back(t);
    }
    for (auto& level : c.tuples) std::sort(level.begin(), level.end());
    for (std::size_t z = 0; z < s.rep->poset.size(); ++z) {
        std::size_t a = n;
        for (std::size_t k = 0; k < n && a == n; ++k)
            if (s.rep->poset.leq(c.cover[k], z)) a = k;
        if (a == n)
            throw Error(ErrorKind::CoverInvalid,
                        "no cover element below vertex " + s.rep->poset.label(z));
        c.anchor.push_back(a);
    }
    return c;
}

namespace {

// Sign of the face A of C (|C| = |A| + 1): (-1)^k where C[k] is the extra
// index; 0 when A is not a face.
int face_sign(const std::vector<std::size_t>& a, const std::vector<std::size_t>& c) {
    if (a.size() + 1 != c.size()) return 0;
    int missing = -1;
    std::size_t ia = 0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (ia < a.size() && a[ia] == c[k]) {
            ++ia;
        } else if (missing < 0) {
            missing = static_cast<int>(k);
        } else {
            return 0;
        }
    }
    if (ia != a.size()) return 0;
    return missing % 2 == 0 ? 1 : -1;
}

// Sign of sorting (a, B...): (-1)^{position of a in sorted(B + a)}; 0 when
// the index repeats.
int anchor_sign(std::size_t a, const std::vector<std::size_t>& b, std::vector<std::size_t>* out) {
    std::size_t pos = 0;
    for (std::size_t x : b) {
        if (x == a) return 0;
        if (x < a) ++pos;
    }
    if (out) {
        *out = b;
        out->insert(out->begin() + pos, a);
    }
    return pos % 2 == 0 ? 1 : -1;
}

RingMatrix scaled(const RingMatrix& m, int sign) {
    if (sign == 1) return m;
    RingMatrix out = m;
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out.at(i, j) = -out.at(i, j);
    return out;
}

} // namespace

std::vector<std::string> cech_certificate(const CechComplex& c) {
    std::vector<std::string> bad;
    const DiagModule& m = c.m;
    const FinitePoset& poset = c.srep.rep->poset;
    const std::size_t len = c.tuples.size();
    const std::vector<std::size_t> empty_tuple;

    for (std::size_t z = 0; z < poset.size(); ++z) {
        auto jat = [&](const std::vector<std::size_t>& t) { return c.join_at(z, t); };
        // Transition of M between evaluated components, over the target ring.
        auto step = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
            return m.transition(jat(a), jat(b));
        };
        auto push_into = [&](const RingMatrix& t, std::size_t from, std::size_t to) {
            return from == to ? t : t.map(c.srep.rep->edge(from, to));
        };

        // d^2 = 0, from the augmentation upward.
        for (long p = -1; p + 2 < static_cast<long>(len); ++p) {
            const auto& sources = p < 0 ? std::vector<std::vector<std::size_t>>{empty_tuple}
                                        : c.tuples[p];
            for (const auto& a : sources)
                for (const auto& e : c.tuples[p + 2]) {
                    RingMatrix total(m.vertex[jat(e)].ring, m.vertex[jat(e)].gens,
                                     m.vertex[jat(a)].gens);
                    for (const auto& mid : c.tuples[p + 1]) {
                        int s1 = face_sign(a, mid);
                        int s2 = face_sign(mid, e);
                        if (s1 == 0 || s2 == 0) continue;
                        RingMatrix t1 = push_into(step(a, mid), jat(mid), jat(e));
                        total = total + scaled(step(mid, e) * t1, s1 * s2);
                    }
                    for (std::size_t col = 0; col < total.cols(); ++col)
                        if (!m.vertex[jat(e)].relation_member(total.column(col))) {
                            bad.push_back("differential does not square to zero at vertex " +
                                          poset.label(z));
                            goto next_vertex;
                        }
                }
        }

        // Contracting homotopy identities through the augmented complex.
        {
            std::size_t a = c.anchor[z];
            // s d = id on M(z): only the anchor summand contributes, through
            // the identity transition M(z) -> M(z v x_a) = M(z).
            {
                RingMatrix total = step(empty_tuple, {a});
                RingMatrix id = RingMatrix::identity(m.vertex[z].ring, m.vertex[z].gens);
                if (!congruent_mod(m.vertex[z], total, id))
                    bad.push_back("homotopy identity fails on the augmentation at vertex " +
                                  poset.label(z));
            }
            for (std::size_t p = 0; p < len; ++p)
                for (const auto& src : c.tuples[p])
                    for (const auto& tgt : c.tuples[p]) {
                        const FPModule& tmod = m.vertex[jat(tgt)];
                        RingMatrix total(tmod.ring, tmod.gens, m.vertex[jat(src)].gens);
                        // d s: drop the anchor from src, then add one index.
                        if (std::binary_search(src.begin(), src.end(), a)) {
                            std::vector<std::size_t> rest;
                            int ssign = 1;
                            for (std::size_t k = 0; k < src.size(); ++k) {
                                if (src[k] == a) {
                                    ssign = k % 2 == 0 ? 1 : -1;
                                    continue;
                                }
                                rest.push_back(src[k]);
                            }
                            int dsign;
                            if (rest.empty())
                                dsign = tgt.size() == 1 ? 1 : 0; // the augmentation map
                            else
                                dsign = face_sign(rest, tgt);
                            if (dsign != 0)
                                total = total + scaled(step(src, tgt), ssign * dsign);
                        }
                        // s d: add one index to src, then drop the anchor.
                        if (p + 1 < len) {
                            std::vector<std::size_t> mid;
                            int ssign = anchor_sign(a, tgt, &mid);
                            int dsign = ssign == 0 ? 0 : face_sign(src, mid);
                            if (ssign != 0 && dsign != 0) {
                                if (jat(mid) != jat(tgt)) {
                                    bad.push_back("anchor join mismatch at vertex " +
                                                  poset.label(z));
                                    goto next_vertex;
                                }
                                total = total + scaled(step(src, mid), ssign * dsign);
                            }
                        }
                        RingMatrix expect(tmod.ring, tmod.gens, m.vertex[jat(src)].gens);
                        if (src == tgt)
                            expect = RingMatrix::identity(tmod.ring, tmod.gens);
                        if (!congruent_mod(tmod, total, expect)) {
                            bad.push_back("homotopy identity fails at vertex " + poset.label(z));
                            goto next_vertex;
                        }
                    }
        }
    next_vertex:;
    }
    return bad;
}

namespace {

// Q-basis of the grade-d slice of a free graded module: pairs (generator,
// exponent) with exponent admissible for the ring.
struct GradedSlice {
    std::vector<std::pair<std::size_t, long>> basis;

    static GradedSlice of(const FPModule& m, long d) {
        if (m.rel.cols() != 0)
            throw Error(ErrorKind::UnsupportedRing,
                        "graded slices require free vertex presentations");
        if (!m.grading && m.gens > 0)
            throw Error(ErrorKind::WindowRequired, "graded slices require a grading");
        GradedSlice s;
        for (std::size_t t = 0; t < m.gens; ++t) {
            long e = d - (*m.grading)[t];
            if (m.ring.admits_exponent(e)) s.basis.push_back({t, e});
        }
        return s;
    }

    std::size_t dim() const { return basis.size(); }

    std::size_t index_of(std::size_t gen, long e) const {
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (basis[k] == std::pair<std::size_t, long>{gen, e}) return k;
        throw Error(ErrorKind::Internal, "graded slice misses an admissible monomial");
    }
};

// Q-matrix of a transition on grade-d slices; throws when the map is not
// graded of degree zero.
QMat graded_block(const RingMatrix& t, const FPModule& src, const GradedSlice& sslice,
                  const FPModule& tgt, const GradedSlice& tslice, long d) {
    QMat out(tslice.dim(), sslice.dim());
    for (std::size_t col = 0; col < sslice.dim(); ++col) {
        auto [g, e] = sslice.basis[col];
        for (std::size_t r = 0; r < t.rows(); ++r)
            for (const auto& [k, q] : t.at(r, g).coeffs()) {
                long deg = e + k + (*tgt.grading)[r];
                if (deg != d)
                    throw Error(ErrorKind::UnsupportedRing,
                                "transition matrices are not graded of degree zero");
                out.at(tslice.index_of(r, e + k), col) += q;
            }
    }
    (void)src;
    return out;
}

struct GradedBounds {
    long g = 0, t = 0;
};

GradedBounds grading_bounds(const DiagModule& m) {
    GradedBounds b;
    for (const auto& v : m.vertex)
        if (v.grading)
            for (long g : *v.grading) b.g = std::max(b.g, std::abs(g));
    for (const auto& [key, t] : m.trans)
        for (std::size_t i = 0; i < t.rows(); ++i)
            for (std::size_t j = 0; j < t.cols(); ++j)
                for (const auto& [e, q] : t.at(i, j).coeffs()) b.t = std::max(b.t, std::abs(e));
    return b;
}

} // namespace

std::vector<std::size_t> global_sections(const DiagModule& m, long lo, long hi) {
    const FinitePoset& poset = m.rep->poset;
    std::vector<std::size_t> dims;
    for (long d = lo; d <= hi; ++d) {
        std::vector<GradedSlice> slice;
        std::vector<std::size_t> offset;
        std::size_t total = 0;
        for (const auto& v : m.vertex) {
            slice.push_back(GradedSlice::of(v, d));
            offset.push_back(total);
            total += slice.back().dim();
        }
        std::vector<QMat> rows;
        std::size_t nrows = 0;
        for (auto [i, j] : poset.strict_pairs()) {
            QMat block(slice[j].dim(), total);
            QMat push = graded_block(m.transition(i, j), m.vertex[i], slice[i], m.vertex[j],
                                     slice[j], d);
            for (std::size_t r = 0; r < push.rows(); ++r) {
                for (std::size_t col = 0; col < push.cols(); ++col)
                    block.at(r, offset[i] + col) = -push.at(r, col);
                block.at(r, offset[j] + r) += 1;
            }
            rows.push_back(block);
            nrows += block.rows();
        }
        QMat sys(nrows, total);
        std::size_t roff = 0;
        for (const auto& b : rows) {
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t col = 0; col < total; ++col)
                    sys.at(roff + r, col) = b.at(r, col);
            roff += b.rows();
        }
        dims.push_back(rows.empty() ? total : sys.kernel().cols());
    }
    return dims;
}

std::size_t CohomologyTable::total(std::size_t p) const {
    std::size_t t = 0;
    if (p < h.size())
        for (std::size_t d : h[p]) t += d;
    return t;
}

CohomologyTable cohomology(const SemilatticeRep& s, const DiagModule& m,
                           const std::vector<std::size_t>& cover,
                           std::optional<std::pair<long, long>> window) {
    CechComplex c = cech_resolution(s, m, cover);
    CohomologyTable table;
    if (window) {
        table.lo = window->first;
        table.hi = window->second;
    } else {
        GradedBounds b = grading_bounds(m);
        table.lo = -(b.g + b.t + 2);
        table.hi = b.g + b.t + 2;
    }
    const std::size_t len = c.tuples.size();
    table.h.assign(len, {});

    // Join of cover elements only: global sections of a direct image are the
    // module itself, so the complex of global sections has these components.
    auto jt = [&](const std::vector<std::size_t>& t) {
        std::size_t j = s.join[c.cover[t[0]]][c.cover[t[0]]];
        for (std::size_t i : t) j = s.join[j][c.cover[i]];
        return j;
    };

    for (long d = table.lo; d <= table.hi; ++d) {
        std::vector<std::vector<GradedSlice>> slices(len);
        std::vector<std::vector<std::size_t>> offsets(len);
        std::vector<std::size_t> dims(len, 0);
        for (std::size_t p = 0; p < len; ++p)
            for (const auto& t : c.tuples[p]) {
                slices[p].push_back(GradedSlice::of(m.vertex[jt(t)], d));
                offsets[p].push_back(dims[p]);
                dims[p] += slices[p].back().dim();
            }
        std::vector<std::size_t> ranks(len, 0);
        for (std::size_t p = 0; p + 1 < len; ++p) {
            QMat diff(dims[p + 1], dims[p]);
            for (std::size_t si = 0; si < c.tuples[p].size(); ++si)
                for (std::size_t ti = 0; ti < c.tuples[p + 1].size(); ++ti) {
                    int sign = face_sign(c.tuples[p][si], c.tuples[p + 1][ti]);
                    if (sign == 0) continue;
                    std::size_t ja = jt(c.tuples[p][si]), jb = jt(c.tuples[p + 1][ti]);
                    QMat block = graded_block(m.transition(ja, jb), m.vertex[ja], slices[p][si],
                                              m.vertex[jb], slices[p + 1][ti], d);
                    for (std::size_t r = 0; r < block.rows(); ++r)
                        for (std::size_t col = 0; col < block.cols(); ++col)
                            diff.at(offsets[p + 1][ti] + r, offsets[p][si] + col) =
                                sign > 0 ? block.at(r, col) : -block.at(r, col);
                }
            ranks[p] = diff.rank();
        }
        for (std::size_t p = 0; p < len; ++p) {
            std::size_t rank_out = p + 1 < len ? ranks[p] : 0;
            std::size_t rank_in = p > 0 ? ranks[p - 1] : 0;
            table.h[p].push_back(dims[p] - rank_out - rank_in);
        }
    }
    for (std::size_t p = 0; p < len; ++p)
        if (!table.h[p].empty() && (table.h[p].front() != 0 || table.h[p].back() != 0))
            table.stable = false;
    return table;
}

std::size_t hom_twists(long m, long n) {
    long b = std::abs(m) + std::abs(n) + 3;
    std::vector<DiagMorphism> basis =
        hom_space(p1_twist(m), p1_twist(n), ExpWindow{-b, b});
    std::size_t direct = basis.size();

    SemilatticeRep s = make_semilattice(p1_ringrep());
    std::size_t u0 = s.rep->poset.index("u0"), u1 = s.rep->poset.index("u1");
    CohomologyTable t = cohomology(s, p1_twist(n - m), {u0, u1});
    std::size_t via_sections = t.total(0);
    if (direct != via_sections)
        throw Error(ErrorKind::Internal,
                    "twist hom computations disagree: " + std::to_string(direct) + " vs " +
                        std::to_string(via_sections));
    return direct;
}

bool locally_projective(const DiagModule& m) {
    for (const auto& v : m.vertex) {
        v.ring.require_euclidean();
        if (!v.is_free()) return false;
    }
    return true;
}

bool twist_generation_check(const DiagModule& m, const std::vector<long>& twists,
                            std::optional<ExpWindow> window) {
    ExpWindow w{0, 0};
    if (window) {
        w = *window;
    } else {
        GradedBounds b = grading_bounds(m);
        long span = b.g + b.t;
        for (long t : twists) span = std::max(span, std::abs(t));
        w = {-(span + 3), span + 3};
    }
    std::vector<DiagMorphism> maps;
    for (long t : twists)
        for (auto& f : hom_space(p1_twist(t), m, w)) maps.push_back(f);
    for (std::size_t i = 0; i < m.vertex.size(); ++i) {
        if (m.vertex[i].is_zero_module()) continue;
        if (maps.empty()) return false;
        RingMatrix cols(m.rep->ring(i), m.vertex[i].gens, maps.size());
        for (std::size_t k = 0; k < maps.size(); ++k)
            for (std::size_t r = 0; r < m.vertex[i].gens; ++r)
                cols.at(r, k) = maps[k].f[i].at(r, 0);
        FPMap canonical{FPModule::free(m.rep->ring(i), maps.size()), m.vertex[i], cols};
        if (!fp_cokernel(canonical).tgt.is_zero_module()) return false;
    }
    return true;
}

} // namespace qcoh
