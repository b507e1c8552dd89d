#include "qcoh/rep.hpp"

#include <random>

namespace qcoh {

namespace {

QMat require_solve(const QMat& a, const QMat& b, const char* what) {
    auto x = QMat::solve(a, b);
    if (!x) throw Error(ErrorKind::Internal, std::string("inconsistent solve in ") + what);
    return *x;
}

} // namespace

RepMor rep_kernel(const RepMor& f) {
    Rep k;
    k.rep = f.src.rep;
    std::vector<QMat> incl;
    for (std::size_t i = 0; i < f.src.nv(); ++i) {
        QMat b = f.f[i].kernel(); // src.dims[i] x k_i
        k.dims.push_back(b.cols());
        incl.push_back(b);
    }
    for (auto [i, j] : k.rep->poset.strict_pairs()) {
        // The source transition restricts to the kernels because f commutes.
        k.tr.insert({{i, j}, require_solve(incl[j], f.src.t(i, j) * incl[i], "rep_kernel")});
    }
    return RepMor{k, f.src, incl};
}

RepMor rep_cokernel(const RepMor& f) {
    Rep c;
    c.rep = f.src.rep;
    std::vector<QMat> proj;
    for (std::size_t i = 0; i < f.tgt.nv(); ++i) {
        QMat p = f.f[i].quotient_map(); // (tgt.dims[i] - rank) x tgt.dims[i]
        c.dims.push_back(p.rows());
        proj.push_back(p);
    }
    for (auto [i, j] : c.rep->poset.strict_pairs()) {
        // Solve X p_i = p_j T; X exists since T carries im(f_i) into im(f_j).
        QMat rhs = (proj[j] * f.tgt.t(i, j)).transpose();
        c.tr.insert(
            {{i, j}, require_solve(proj[i].transpose(), rhs, "rep_cokernel").transpose()});
    }
    return RepMor{f.tgt, c, proj};
}

std::size_t rep_mor_dim(const Rep& a, const Rep& b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.nv(); ++i) n += a.dims[i] * b.dims[i];
    return n;
}

QMat rep_mor_coords(const RepMor& m) {
    QMat v(rep_mor_dim(m.src, m.tgt), 1);
    std::size_t off = 0;
    for (const auto& blk : m.f)
        for (std::size_t i = 0; i < blk.rows(); ++i)
            for (std::size_t j = 0; j < blk.cols(); ++j) v.at(off++, 0) = blk.at(i, j);
    return v;
}

RepMor rep_mor_from_coords(const Rep& a, const Rep& b, const QMat& coords, std::size_t col) {
    RepMor m{a, b, {}};
    std::size_t off = 0;
    for (std::size_t v = 0; v < a.nv(); ++v) {
        QMat blk(b.dims[v], a.dims[v]);
        for (std::size_t i = 0; i < blk.rows(); ++i)
            for (std::size_t j = 0; j < blk.cols(); ++j) blk.at(i, j) = coords.at(off++, col);
        m.f.push_back(std::move(blk));
    }
    return m;
}

std::vector<RepMor> rep_hom(const Rep& a, const Rep& b) {
    std::size_t total = rep_mor_dim(a, b);
    std::vector<std::size_t> off(a.nv(), 0);
    for (std::size_t i = 1; i < a.nv(); ++i)
        off[i] = off[i - 1] + a.dims[i - 1] * b.dims[i - 1];

    // Row-major vectorisation: vec(f_j T) = (I (x) T^t) vec(f_j) and
    // vec(T' f_i) = (T' (x) I) vec(f_i).
    auto pairs = a.rep->poset.strict_pairs();
    std::size_t rows = 0;
    for (auto [i, j] : pairs) rows += b.dims[j] * a.dims[i];
    QMat sys(rows, total);
    std::size_t r0 = 0;
    for (auto [i, j] : pairs) {
        QMat lhs = QMat::identity(b.dims[j]).kron(a.t(i, j).transpose());
        QMat rhs = b.t(i, j).kron(QMat::identity(a.dims[i]));
        for (std::size_t r = 0; r < lhs.rows(); ++r) {
            for (std::size_t c = 0; c < lhs.cols(); ++c) sys.at(r0 + r, off[j] + c) = lhs.at(r, c);
            for (std::size_t c = 0; c < rhs.cols(); ++c)
                sys.at(r0 + r, off[i] + c) -= rhs.at(r, c);
        }
        r0 += lhs.rows();
    }
    QMat k = sys.kernel();
    std::vector<RepMor> basis;
    for (std::size_t c = 0; c < k.cols(); ++c) basis.push_back(rep_mor_from_coords(a, b, k, c));
    return basis;
}

RepPushout rep_pushout(const RepMor& f, const RepMor& g) {
    RepSum s = rep_direct_sum(f.tgt, g.tgt);
    RepMor h = rep_sub(rep_compose(s.inl, f), rep_compose(s.inr, g));
    RepMor q = rep_cokernel(h);
    return {q.tgt, rep_compose(q, s.inl), rep_compose(q, s.inr)};
}

RepPullback rep_pullback(const RepMor& f, const RepMor& g) {
    RepSum s = rep_direct_sum(f.src, g.src);
    RepMor h = rep_sub(rep_compose(f, s.prl), rep_compose(g, s.prr));
    RepMor k = rep_kernel(h);
    return {k.src, rep_compose(s.prl, k), rep_compose(s.prr, k)};
}

Rep rep_projective(RingRepPtr r, std::size_t i) {
    Rep p;
    p.rep = r;
    for (std::size_t j = 0; j < r->poset.size(); ++j)
        p.dims.push_back(r->poset.leq(i, j) ? 1 : 0);
    for (auto [j, k] : r->poset.strict_pairs()) {
        QMat t(p.dims[k], p.dims[j]);
        if (p.dims[j] == 1 && p.dims[k] == 1) t.at(0, 0) = 1;
        p.tr.insert({{j, k}, t});
    }
    return p;
}

RepPresentation rep_presentation(const Rep& x) {
    const auto& poset = x.rep->poset;
    RepPresentation out;
    // One projective summand P_i per basis vector of x at vertex i.
    for (std::size_t i = 0; i < x.nv(); ++i)
        for (std::size_t b = 0; b < x.dims[i]; ++b) out.summands.push_back(i);

    Rep p;
    p.rep = x.rep;
    // Coordinates of p at vertex j: the summands (i, b) with i <= j, in order.
    auto coords_at = [&](std::size_t j) {
        std::vector<std::size_t> idx;
        for (std::size_t s = 0; s < out.summands.size(); ++s)
            if (poset.leq(out.summands[s], j)) idx.push_back(s);
        return idx;
    };
    for (std::size_t j = 0; j < x.nv(); ++j) p.dims.push_back(coords_at(j).size());
    for (auto [j, k] : poset.strict_pairs()) {
        auto cj = coords_at(j), ck = coords_at(k);
        QMat t(ck.size(), cj.size());
        for (std::size_t a = 0; a < ck.size(); ++a)
            for (std::size_t b = 0; b < cj.size(); ++b)
                if (ck[a] == cj[b]) t.at(a, b) = 1;
        p.tr.insert({{j, k}, t});
    }
    out.p = p;

    RepMor epi{p, x, {}};
    for (std::size_t j = 0; j < x.nv(); ++j) {
        auto cj = coords_at(j);
        QMat m(x.dims[j], cj.size());
        for (std::size_t c = 0; c < cj.size(); ++c) {
            std::size_t s = cj[c];
            std::size_t i = out.summands[s];
            // Basis index of the summand within vertex i.
            std::size_t b = s;
            for (std::size_t v = 0; v < i; ++v) b -= x.dims[v];
            QMat col = x.t(i, j).column(b);
            for (std::size_t r = 0; r < x.dims[j]; ++r) m.at(r, c) = col.at(r, 0);
        }
        epi.f.push_back(std::move(m));
    }
    out.epi = epi;
    out.ker_incl = rep_kernel(epi);
    return out;
}

bool rep_isomorphic(const Rep& a, const Rep& b, unsigned seed) {
    if (a.dims != b.dims) return false;
    if (a.qdim() == 0) return true;
    auto basis = rep_hom(a, b);
    if (basis.empty()) return false;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int attempt = 0; attempt < 40; ++attempt) {
        RepMor cand = rep_zero_mor(a, b);
        for (const auto& h : basis) cand = rep_add(cand, rep_scale(Q(coef(rng)), h));
        bool ok = true;
        for (const auto& blk : cand.f)
            if (blk.rows() != blk.cols() || !blk.inverse()) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

DiagModule rep_to_diag(const Rep& x) {
    DiagModule m;
    m.rep = x.rep;
    for (std::size_t i = 0; i < x.nv(); ++i)
        m.vertex.push_back(FPModule::free(x.rep->ring(i), x.dims[i]));
    for (auto [i, j] : x.rep->poset.strict_pairs())
        m.trans.insert({{i, j}, RingMatrix::from_qmat(x.rep->ring(j), x.t(i, j))});
    return m;
}

namespace {

QMat field_qmat(const RingMatrix& m) {
    QMat q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) q.at(i, j) = m.at(i, j).coeff(0);
    return q;
}

} // namespace

Rep diag_to_rep(const DiagModule& m) {
    if (!m.rep->constant_field())
        throw Error(ErrorKind::UnsupportedRing,
                    "plain representation form needs the constant field diagram");
    Rep x;
    x.rep = m.rep;
    std::vector<QMat> proj, sect;
    for (std::size_t i = 0; i < m.vertex.size(); ++i) {
        QMat p = field_qmat(m.at(i).rel).quotient_map();
        x.dims.push_back(p.rows());
        QMat s = *QMat::solve(p, QMat::identity(p.rows()));
        proj.push_back(p);
        sect.push_back(s);
    }
    for (auto [i, j] : m.rep->poset.strict_pairs())
        x.tr.insert({{i, j}, proj[j] * field_qmat(m.transition(i, j)) * sect[i]});
    return x;
}

RepMor diag_to_rep_mor(const DiagMorphism& f) {
    Rep a = diag_to_rep(f.src), b = diag_to_rep(f.tgt);
    RepMor m{a, b, {}};
    for (std::size_t i = 0; i < a.nv(); ++i) {
        QMat pb = field_qmat(f.tgt.at(i).rel).quotient_map();
        QMat pa = field_qmat(f.src.at(i).rel).quotient_map();
        QMat sa = *QMat::solve(pa, QMat::identity(pa.rows()));
        m.f.push_back(pb * field_qmat(f.f[i]) * sa);
    }
    return m;
}

} // namespace qcoh
