#include "qcoh/diagram.hpp"

#include <algorithm>
#include <sstream>

namespace qcoh {

RingRep::RingRep(FinitePoset p, std::vector<RingSpec> r)
    : poset(std::move(p)), rings(std::move(r)) {
    if (rings.size() != poset.size())
        throw Error(ErrorKind::Internal, "one ring per poset element required");
    for (auto [i, j] : poset.strict_pairs()) {
        if (rings[i].euclidean() && rings[j].euclidean())
            edges.insert({{i, j}, RingMap::make(rings[i], rings[j])});
        else
            edges.insert({{i, j}, RingMap::opaque(rings[i], rings[j])});
    }
}

RingMap RingRep::edge(std::size_t i, std::size_t j) const {
    if (i == j) return RingMap::identity(rings[i]);
    auto it = edges.find({i, j});
    if (it == edges.end())
        throw Error(ErrorKind::Internal, "no edge between incomparable elements");
    return it->second;
}

std::vector<std::string> RingRep::validate() const {
    std::vector<std::string> bad;
    for (auto [i, j] : poset.strict_pairs())
        for (std::size_t k = 0; k < poset.size(); ++k) {
            if (!poset.less(j, k)) continue;
            RingMap lhs = edge(i, k);
            RingMap rhs = ringmap_compose(edge(j, k), edge(i, j));
            if (!(lhs == rhs))
                bad.push_back("edge composition mismatch through " + poset.label(j) + " for " +
                              poset.label(i) + " <= " + poset.label(k));
        }
    return bad;
}

bool RingRep::constant_field() const {
    for (const auto& r : rings)
        if (r.kind != RingSpec::Kind::Field) return false;
    return true;
}

RingRepPtr constant_field_rep(const FinitePoset& p) {
    std::vector<RingSpec> rings(p.size(), RingSpec::field());
    return std::make_shared<RingRep>(p, rings);
}

RingMatrix DiagModule::transition(std::size_t i, std::size_t j) const {
    if (i == j) return RingMatrix::identity(rep->ring(i), vertex[i].gens);
    auto it = trans.find({i, j});
    if (it == trans.end()) throw Error(ErrorKind::Internal, "missing transition matrix");
    return it->second;
}

RingMatrix DiagModule::push(std::size_t i, std::size_t j, const RingMatrix& v) const {
    if (i == j) return v;
    return transition(i, j) * v.map(rep->edge(i, j));
}

bool DiagModule::is_zero() const {
    for (const auto& m : vertex)
        if (!m.is_zero_module()) return false;
    return true;
}

DiagModule zero_module(RingRepPtr rep) {
    DiagModule m;
    m.rep = rep;
    for (std::size_t i = 0; i < rep->poset.size(); ++i)
        m.vertex.push_back(FPModule::zero(rep->ring(i)));
    for (auto [i, j] : rep->poset.strict_pairs())
        m.trans.insert({{i, j}, RingMatrix(rep->ring(j), 0, 0)});
    return m;
}

DiagModule direct_sum(const DiagModule& a, const DiagModule& b) {
    DiagModule m;
    m.rep = a.rep;
    for (std::size_t i = 0; i < a.vertex.size(); ++i) {
        const FPModule &A = a.vertex[i], &B = b.vertex[i];
        RingMatrix rel(A.ring, A.gens + B.gens, A.rel.cols() + B.rel.cols());
        for (std::size_t r = 0; r < A.gens; ++r)
            for (std::size_t c = 0; c < A.rel.cols(); ++c) rel.at(r, c) = A.rel.at(r, c);
        for (std::size_t r = 0; r < B.gens; ++r)
            for (std::size_t c = 0; c < B.rel.cols(); ++c)
                rel.at(A.gens + r, A.rel.cols() + c) = B.rel.at(r, c);
        m.vertex.push_back(FPModule(A.ring, A.gens + B.gens, rel));
    }
    for (auto [i, j] : a.rep->poset.strict_pairs()) {
        RingMatrix ta = a.transition(i, j), tb = b.transition(i, j);
        RingMatrix t(a.rep->ring(j), ta.rows() + tb.rows(), ta.cols() + tb.cols());
        for (std::size_t r = 0; r < ta.rows(); ++r)
            for (std::size_t c = 0; c < ta.cols(); ++c) t.at(r, c) = ta.at(r, c);
        for (std::size_t r = 0; r < tb.rows(); ++r)
            for (std::size_t c = 0; c < tb.cols(); ++c)
                t.at(ta.rows() + r, ta.cols() + c) = tb.at(r, c);
        m.trans.insert({{i, j}, t});
    }
    return m;
}

DiagMorphism diag_identity(const DiagModule& m) {
    DiagMorphism f{m, m, {}};
    for (std::size_t i = 0; i < m.vertex.size(); ++i)
        f.f.push_back(RingMatrix::identity(m.rep->ring(i), m.vertex[i].gens));
    return f;
}

DiagMorphism diag_zero(const DiagModule& src, const DiagModule& tgt) {
    DiagMorphism f{src, tgt, {}};
    for (std::size_t i = 0; i < src.vertex.size(); ++i)
        f.f.push_back(RingMatrix(src.rep->ring(i), tgt.vertex[i].gens, src.vertex[i].gens));
    return f;
}

DiagMorphism diag_compose(const DiagMorphism& g, const DiagMorphism& f) {
    DiagMorphism h{f.src, g.tgt, {}};
    for (std::size_t i = 0; i < f.f.size(); ++i) h.f.push_back(g.f[i] * f.f[i]);
    return h;
}

DiagMorphism diag_add(const DiagMorphism& a, const DiagMorphism& b) {
    DiagMorphism h{a.src, a.tgt, {}};
    for (std::size_t i = 0; i < a.f.size(); ++i) h.f.push_back(a.f[i] + b.f[i]);
    return h;
}

DiagMorphism diag_scale(const Q& c, const DiagMorphism& a) {
    DiagMorphism h{a.src, a.tgt, {}};
    for (std::size_t i = 0; i < a.f.size(); ++i) {
        RingMatrix m = a.f[i];
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t col = 0; col < m.cols(); ++col)
                m.at(r, col) = m.at(r, col) * RingElement(m.ring(), c);
        h.f.push_back(m);
    }
    return h;
}

bool diag_morphism_valid(const DiagMorphism& m, std::string* why) {
    const auto& poset = m.src.rep->poset;
    for (std::size_t i = 0; i < poset.size(); ++i) {
        FPMap v{m.src.vertex[i], m.tgt.vertex[i], m.f[i]};
        if (!v.well_defined()) {
            if (why) *why = "vertex map at " + poset.label(i) + " does not respect relations";
            return false;
        }
    }
    for (auto [i, j] : poset.strict_pairs()) {
        RingMap e = m.src.rep->edge(i, j);
        RingMatrix lhs = m.f[j] * m.src.transition(i, j);
        RingMatrix rhs = m.tgt.transition(i, j) * m.f[i].map(e);
        RingMatrix diff = lhs - rhs;
        for (std::size_t c = 0; c < diff.cols(); ++c)
            if (!m.tgt.vertex[j].relation_member(diff.column(c))) {
                if (why)
                    *why = "square at " + poset.label(i) + " <= " + poset.label(j) +
                           " does not commute";
                return false;
            }
    }
    return true;
}

std::vector<std::string> validate(const DiagModule& m) {
    std::vector<std::string> bad;
    const auto& poset = m.rep->poset;
    for (auto [i, j] : poset.strict_pairs()) {
        RingMatrix t = m.transition(i, j);
        if (t.rows() != m.vertex[j].gens || t.cols() != m.vertex[i].gens) {
            bad.push_back("transition shape mismatch at " + poset.label(i) + " <= " +
                          poset.label(j));
            continue;
        }
        // relations respected: T * R^i_j(rel_i) lands in the relation image
        RingMatrix moved = t * m.vertex[i].rel.map(m.rep->edge(i, j));
        for (std::size_t c = 0; c < moved.cols(); ++c)
            if (!m.vertex[j].relation_member(moved.column(c)))
                bad.push_back("relation " + std::to_string(c) + " of " + poset.label(i) +
                              " not respected along " + poset.label(i) + " <= " + poset.label(j));
    }
    for (auto [i, j] : poset.strict_pairs())
        for (std::size_t k = 0; k < poset.size(); ++k) {
            if (!poset.less(j, k)) continue;
            RingMatrix direct = m.transition(i, k);
            RingMatrix through = m.transition(j, k) * m.transition(i, j).map(m.rep->edge(j, k));
            RingMatrix diff = direct - through;
            for (std::size_t c = 0; c < diff.cols(); ++c)
                if (!m.vertex[k].relation_member(diff.column(c)))
                    bad.push_back("composite transition mismatch " + poset.label(i) + " <= " +
                                  poset.label(j) + " <= " + poset.label(k) + " on generator " +
                                  std::to_string(c));
        }
    return bad;
}

QcohReport is_quasicoherent(const DiagModule& m) {
    for (auto [i, j] : m.rep->poset.strict_pairs()) {
        FPModule moved = base_change(m.vertex[i], m.rep->edge(i, j));
        FPMap canonical{moved, m.vertex[j], m.transition(i, j)};
        if (!canonical.well_defined() || !fp_is_iso(canonical))
            return {false, std::pair<std::size_t, std::size_t>{i, j}};
    }
    return {true, std::nullopt};
}

DiagModule projective_generator(RingRepPtr rep, std::size_t i) {
    DiagModule m;
    m.rep = rep;
    for (std::size_t j = 0; j < rep->poset.size(); ++j)
        m.vertex.push_back(rep->poset.leq(i, j) ? FPModule::free(rep->ring(j), 1)
                                                : FPModule::zero(rep->ring(j)));
    for (auto [a, b] : rep->poset.strict_pairs()) {
        RingMatrix t(rep->ring(b), m.vertex[b].gens, m.vertex[a].gens);
        if (m.vertex[a].gens == 1 && m.vertex[b].gens == 1) t.at(0, 0) = RingElement(rep->ring(b), Q(1));
        m.trans.insert({{a, b}, t});
    }
    return m;
}

DiagMorphism morphism_from_element(std::size_t i, const DiagModule& m, const RingMatrix& elem) {
    DiagModule p = projective_generator(m.rep, i);
    DiagMorphism f{p, m, {}};
    for (std::size_t j = 0; j < m.vertex.size(); ++j) {
        if (!m.rep->poset.leq(i, j)) {
            f.f.push_back(RingMatrix(m.rep->ring(j), m.vertex[j].gens, 0));
            continue;
        }
        f.f.push_back(m.push(i, j, elem));
    }
    return f;
}

RingMatrix element_from_morphism(std::size_t i, const DiagMorphism& f) { return f.f[i]; }

DiagMorphism kernel(const DiagMorphism& f) {
    const DiagModule& M = f.src;
    DiagModule K;
    K.rep = M.rep;
    std::vector<FPMap> incls;
    for (std::size_t i = 0; i < M.vertex.size(); ++i) {
        FPMap v{M.vertex[i], f.tgt.vertex[i], f.f[i]};
        FPMap ki = fp_kernel(v);
        K.vertex.push_back(ki.src);
        incls.push_back(ki);
    }
    for (auto [i, j] : M.rep->poset.strict_pairs()) {
        // Induced transition: solve incl_j * T + rel_M(j) * Z = M^i_j o incl_i.
        RingMatrix target = M.transition(i, j) * incls[i].phi.map(M.rep->edge(i, j));
        RingMatrix lhs = RingMatrix::hcat(incls[j].phi, M.vertex[j].rel);
        RingMatrix t(M.rep->ring(j), K.vertex[j].gens, K.vertex[i].gens);
        if (K.vertex[j].gens > 0 && K.vertex[i].gens > 0) {
            auto sol = solve_linear(lhs, target);
            if (!sol)
                throw Error(ErrorKind::Internal, "kernel transition lift failed");
            t = sol->submatrix(0, 0, K.vertex[j].gens, K.vertex[i].gens);
        }
        K.trans.insert({{i, j}, t});
    }
    DiagMorphism inc{K, M, {}};
    for (auto& m : incls) inc.f.push_back(m.phi);
    return inc;
}

DiagMorphism cokernel(const DiagMorphism& f) {
    const DiagModule& N = f.tgt;
    DiagModule C;
    C.rep = N.rep;
    for (std::size_t i = 0; i < N.vertex.size(); ++i)
        C.vertex.push_back(fp_cokernel(FPMap{f.src.vertex[i], N.vertex[i], f.f[i]}).tgt);
    for (auto [i, j] : N.rep->poset.strict_pairs()) C.trans.insert({{i, j}, N.transition(i, j)});
    DiagMorphism pr{N, C, {}};
    for (std::size_t i = 0; i < N.vertex.size(); ++i)
        pr.f.push_back(RingMatrix::identity(N.rep->ring(i), N.vertex[i].gens));
    return pr;
}

DiagMorphism image(const DiagMorphism& f) { return kernel(cokernel(f)); }

namespace {

struct SpanBounds {
    long lo = 0, hi = 0;
    bool any = false;
    void add(const RingElement& e) {
        if (e.is_zero()) return;
        long l = e.coeffs().begin()->first, h = e.coeffs().rbegin()->first;
        if (!any) {
            lo = l;
            hi = h;
            any = true;
        } else {
            lo = std::min(lo, l);
            hi = std::max(hi, h);
        }
    }
    void add(const RingMatrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) add(m.at(i, j));
    }
};

// Matrix-space slice: p x q matrices over R with windowed entries, flattened
// with component index j*p + i for entry (i, j).
struct MatSpace {
    WinSpace ws;
    std::size_t p = 0, q = 0;
    MatSpace() = default;
    MatSpace(RingSpec r, std::size_t pp, std::size_t qq, ExpWindow w)
        : ws(std::move(r), pp * qq, w), p(pp), q(qq) {}
    std::size_t dim() const { return ws.dim(); }
    RingMatrix to_matrix(const QMat& coords, std::size_t col = 0) const {
        RingMatrix m(ws.ring, p, q);
        for (std::size_t comp = 0; comp < ws.n; ++comp) {
            std::size_t i = comp % p, j = comp / p;
            for (std::size_t k = 0; k < ws.exps.size(); ++k) {
                const Q& c = coords.at(ws.index(comp, k), col);
                if (c != 0) m.at(i, j).set(ws.exps[k], m.at(i, j).coeff(ws.exps[k]) + c);
            }
        }
        return m;
    }
    QMat from_matrix(const RingMatrix& m, bool* fits = nullptr) const {
        QMat coords(dim(), 1);
        bool ok = true;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < q; ++j)
                for (const auto& [e, c] : m.at(i, j).coeffs()) {
                    bool found = false;
                    for (std::size_t k = 0; k < ws.exps.size(); ++k)
                        if (ws.exps[k] == e) {
                            coords.at(ws.index(j * p + i, k), 0) = c;
                            found = true;
                            break;
                        }
                    if (!found) ok = false;
                }
        if (fits) *fits = ok;
        return coords;
    }
};

// Q-linear map coords(X) -> coords(A * rmap(X) * B) between matrix slices.
QMat sandwich(const RingMatrix* A, const RingMap* rmap, const RingMatrix* B, const MatSpace& in,
              const MatSpace& out) {
    QMat m(out.dim(), in.dim());
    for (std::size_t col = 0; col < in.dim(); ++col) {
        QMat unit(in.dim(), 1);
        unit.at(col, 0) = 1;
        RingMatrix X = in.to_matrix(unit);
        RingMatrix Y = rmap ? X.map(*rmap) : X;
        if (A) Y = *A * Y;
        if (B) Y = Y * *B;
        bool fits = true;
        QMat coords = out.from_matrix(Y, &fits);
        if (!fits) throw Error(ErrorKind::Internal, "hom_space window sizing error");
        for (std::size_t r = 0; r < out.dim(); ++r) m.at(r, col) = coords.at(r, 0);
    }
    return m;
}

// Columns spanning (a generous slice of) the set of p x q matrices whose
// columns lie in the image of relmat, inside `space`.
std::vector<QMat> null_matrix_columns(const RingMatrix& relmat, const MatSpace& space,
                                      long margin) {
    std::vector<QMat> out;
    if (relmat.cols() == 0 || space.ws.exps.empty()) return out;
    long outlo = space.ws.exps.front(), outhi = space.ws.exps.back();
    for (std::size_t jc = 0; jc < relmat.cols(); ++jc) {
        SpanBounds b;
        for (std::size_t i = 0; i < relmat.rows(); ++i) b.add(relmat.at(i, jc));
        if (!b.any) continue;
        for (long d = outlo - b.hi - margin; d <= outhi - b.lo + margin; ++d) {
            if (!relmat.ring().admits_exponent(d)) continue;
            RingMatrix colv(relmat.ring(), relmat.rows(), 1);
            bool legal = true;
            for (std::size_t i = 0; i < relmat.rows() && legal; ++i)
                for (const auto& [e, c] : relmat.at(i, jc).coeffs()) {
                    if (!relmat.ring().admits_exponent(e + d)) {
                        legal = false;
                        break;
                    }
                    colv.at(i, 0).set(e + d, c);
                }
            if (!legal) continue;
            for (std::size_t q = 0; q < space.q; ++q) {
                RingMatrix m(relmat.ring(), space.p, space.q);
                for (std::size_t i = 0; i < space.p; ++i) m.at(i, q) = colv.at(i, 0);
                bool fits = true;
                QMat coords = space.from_matrix(m, &fits);
                if (!fits) continue;
                out.push_back(coords);
            }
        }
    }
    return out;
}

QMat cols_to_mat(std::size_t dim, const std::vector<QMat>& cols) {
    QMat m(dim, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = cols[j].at(i, 0);
    return m;
}

} // namespace

std::vector<DiagMorphism> hom_space(const DiagModule& M, const DiagModule& N,
                                    std::optional<ExpWindow> window) {
    const auto& poset = M.rep->poset;
    const std::size_t nv = poset.size();

    ExpWindow w{0, 0};
    if (window) {
        w = *window;
    } else {
        bool all_finite = true;
        std::size_t total = 0;
        for (std::size_t i = 0; i < nv; ++i) {
            auto dm = M.vertex[i].qdim();
            auto dn = N.vertex[i].qdim();
            if (!dm || !dn) {
                all_finite = false;
                break;
            }
            total += *dm + *dn;
        }
        if (!all_finite)
            throw Error(ErrorKind::WindowRequired,
                        "hom space needs a degree window for infinite-dimensional vertex modules");
        long b = static_cast<long>(total) + 1;
        w = {-b, b};
    }

    long margin = 2;
    SpanBounds global;
    for (std::size_t i = 0; i < nv; ++i) {
        global.add(M.vertex[i].rel);
        global.add(N.vertex[i].rel);
    }
    for (auto [i, j] : poset.strict_pairs()) {
        global.add(M.transition(i, j));
        global.add(N.transition(i, j));
    }
    if (global.any) margin += std::max(std::abs(global.lo), std::abs(global.hi));

    // Unknown layout: per-vertex matrix slices, then multiplier blocks.
    std::vector<MatSpace> unk(nv);
    std::vector<std::size_t> offset(nv, 0);
    std::size_t fdim = 0;
    for (std::size_t i = 0; i < nv; ++i) {
        unk[i] = MatSpace(M.rep->ring(i), N.vertex[i].gens, M.vertex[i].gens, w);
        offset[i] = fdim;
        fdim += unk[i].dim();
    }

    struct Block {
        QMat C; // rows x fdim
        QMat G; // rows x zdim
    };
    std::vector<Block> blocks;

    auto add_block = [&](const QMat& C, const QMat& G) { blocks.push_back({C, G}); };

    // (A) per-vertex well-definedness: f_i * rel_M(i) in im rel_N(i)
    for (std::size_t i = 0; i < nv; ++i) {
        if (M.vertex[i].rel.cols() == 0 || unk[i].dim() == 0) continue;
        SpanBounds rb;
        rb.add(M.vertex[i].rel);
        ExpWindow ow{w.lo + (rb.any ? rb.lo : 0) - margin, w.hi + (rb.any ? rb.hi : 0) + margin};
        MatSpace out(M.rep->ring(i), N.vertex[i].gens, M.vertex[i].rel.cols(), ow);
        QMat Ci(out.dim(), fdim);
        QMat local = sandwich(nullptr, nullptr, &M.vertex[i].rel, unk[i], out);
        for (std::size_t r = 0; r < out.dim(); ++r)
            for (std::size_t c = 0; c < unk[i].dim(); ++c) Ci.at(r, offset[i] + c) = local.at(r, c);
        add_block(Ci, cols_to_mat(out.dim(), null_matrix_columns(N.vertex[i].rel, out, margin)));
    }

    // (B) commuting squares: f_j * T_M(i,j) - T_N(i,j) * e(f_i) in im rel_N(j)
    for (auto [i, j] : poset.strict_pairs()) {
        if (M.vertex[i].gens == 0) continue;
        RingMap e = M.rep->edge(i, j);
        RingMatrix TM = M.transition(i, j), TN = N.transition(i, j);
        SpanBounds tb;
        tb.add(TM);
        tb.add(TN);
        long span = tb.any ? std::max(std::abs(tb.lo), std::abs(tb.hi)) : 0;
        long wspan = std::max(std::abs(w.lo), std::abs(w.hi));
        ExpWindow ow{-(wspan + span + margin), wspan + span + margin};
        MatSpace out(M.rep->ring(j), N.vertex[j].gens, M.vertex[i].gens, ow);
        QMat Cb(out.dim(), fdim);
        if (unk[j].dim() > 0) {
            QMat left = sandwich(nullptr, nullptr, &TM, unk[j], out);
            for (std::size_t r = 0; r < out.dim(); ++r)
                for (std::size_t c = 0; c < unk[j].dim(); ++c)
                    Cb.at(r, offset[j] + c) = left.at(r, c);
        }
        if (unk[i].dim() > 0) {
            QMat right = sandwich(&TN, &e, nullptr, unk[i], out);
            for (std::size_t r = 0; r < out.dim(); ++r)
                for (std::size_t c = 0; c < unk[i].dim(); ++c)
                    Cb.at(r, offset[i] + c) -= right.at(r, c);
        }
        add_block(Cb, cols_to_mat(out.dim(), null_matrix_columns(N.vertex[j].rel, out, margin)));
    }

    std::size_t zdim = 0, rows = 0;
    for (const auto& b : blocks) {
        zdim += b.G.cols();
        rows += b.C.rows();
    }
    QMat sys(rows, fdim + zdim);
    std::size_t roff = 0, zoff = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.C.rows(); ++r) {
            for (std::size_t c = 0; c < fdim; ++c) sys.at(roff + r, c) = b.C.at(r, c);
            for (std::size_t c = 0; c < b.G.cols(); ++c)
                sys.at(roff + r, fdim + zoff + c) = -b.G.at(r, c);
        }
        roff += b.C.rows();
        zoff += b.G.cols();
    }

    QMat sol;
    if (blocks.empty()) {
        sol = QMat::identity(fdim);
    } else {
        QMat ker = sys.kernel();
        sol = QMat(fdim, ker.cols());
        for (std::size_t c = 0; c < ker.cols(); ++c)
            for (std::size_t r = 0; r < fdim; ++r) sol.at(r, c) = ker.at(r, c);
    }

    // Quotient by morphism representations that are zero (columns inside the
    // relation image at every vertex).
    std::vector<QMat> nulls;
    for (std::size_t i = 0; i < nv; ++i)
        for (const auto& c : null_matrix_columns(N.vertex[i].rel, unk[i], margin)) {
            QMat v(fdim, 1);
            for (std::size_t r = 0; r < unk[i].dim(); ++r) v.at(offset[i] + r, 0) = c.at(r, 0);
            nulls.push_back(v);
        }
    QMat Zm = cols_to_mat(fdim, nulls);
    QMat q = Zm.cols() ? Zm.quotient_map() : QMat::identity(fdim);
    QMat classes = q * sol;
    auto pivots = classes.rref();

    std::vector<DiagMorphism> out;
    for (auto p : pivots) {
        DiagMorphism f{M, N, {}};
        for (std::size_t i = 0; i < nv; ++i) {
            QMat coords(unk[i].dim(), 1);
            for (std::size_t r = 0; r < unk[i].dim(); ++r)
                coords.at(r, 0) = sol.at(offset[i] + r, p);
            f.f.push_back(unk[i].to_matrix(coords));
        }
        out.push_back(f);
    }
    return out;
}

} // namespace qcoh
