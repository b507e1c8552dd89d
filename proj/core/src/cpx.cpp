#include "qcoh/cpx.hpp"

#include <algorithm>
#include <random>

namespace qcoh {

namespace {

bool mor_equal(const RepMor& a, const RepMor& b) {
    return rep_sub(a, b).is_zero();
}

} // namespace

// ---------------------------------------------------------------------------
// Complex basics.
// ---------------------------------------------------------------------------

RepMor Complex::diff(long n) const {
    if (n >= lo && n < hi()) return diffs[n - lo];
    return rep_zero_mor(at(n), at(n + 1));
}

std::size_t Complex::qdim() const {
    std::size_t d = 0;
    for (const auto& c : comps) d += c.qdim();
    return d;
}

bool Complex::is_zero() const { return qdim() == 0; }

bool Complex::valid() const {
    if (comps.empty()) return diffs.empty();
    if (diffs.size() + 1 != comps.size()) return false;
    for (const auto& c : comps)
        if (!c.valid()) return false;
    for (std::size_t k = 0; k < diffs.size(); ++k) {
        if (!diffs[k].valid()) return false;
        if (diffs[k].src.dims != comps[k].dims || diffs[k].tgt.dims != comps[k + 1].dims)
            return false;
    }
    for (std::size_t k = 0; k + 1 < diffs.size(); ++k)
        if (!rep_compose(diffs[k + 1], diffs[k]).is_zero()) return false;
    return true;
}

Complex cpx_zero(RingRepPtr rep) { return Complex{std::move(rep), 0, {}, {}}; }

Complex disc(const Rep& x, long n) {
    if (x.is_zero()) return cpx_zero(x.rep);
    return Complex{x.rep, n, {x, x}, {rep_id(x)}};
}

Complex sphere(const Rep& x, long n) {
    if (x.is_zero()) return cpx_zero(x.rep);
    return Complex{x.rep, n, {x}, {}};
}

Complex shift(const Complex& x, long k) {
    Complex out = x;
    out.lo = x.lo - k;
    if (k % 2 != 0)
        for (auto& d : out.diffs) d = rep_scale(Q(-1), d);
    return out;
}

// ---------------------------------------------------------------------------
// Chain maps.
// ---------------------------------------------------------------------------

RepMor CpxMor::comp(long n) const {
    if (src.in_window(n)) return f[n - src.lo];
    return rep_zero_mor(src.at(n), tgt.at(n));
}

bool CpxMor::valid() const {
    if (f.size() != src.comps.size()) return false;
    for (long n = src.lo; n <= src.hi(); ++n) {
        const RepMor& fn = f[n - src.lo];
        if (!fn.valid()) return false;
        if (fn.src.dims != src.comps[n - src.lo].dims || fn.tgt.dims != tgt.at(n).dims)
            return false;
        if (!mor_equal(rep_compose(tgt.diff(n), fn), rep_compose(comp(n + 1), src.diff(n))))
            return false;
    }
    return true;
}

bool CpxMor::is_zero() const {
    for (const auto& m : f)
        if (!m.is_zero()) return false;
    return true;
}

bool CpxMor::degreewise_mono() const {
    for (const auto& m : f)
        if (!m.vertexwise_mono()) return false;
    return true;
}

bool CpxMor::degreewise_epi() const {
    for (long n = tgt.lo; n <= tgt.hi(); ++n)
        if (!comp(n).vertexwise_epi()) return false;
    return true;
}

CpxMor cpx_id(const Complex& x) {
    CpxMor m{x, x, {}};
    for (const auto& c : x.comps) m.f.push_back(rep_id(c));
    return m;
}

CpxMor cpx_zero_mor(const Complex& a, const Complex& b) {
    CpxMor m{a, b, {}};
    for (long n = a.lo; n <= a.hi(); ++n) m.f.push_back(rep_zero_mor(a.at(n), b.at(n)));
    return m;
}

CpxMor cpx_compose(const CpxMor& g, const CpxMor& f) {
    CpxMor h{f.src, g.tgt, {}};
    for (long n = f.src.lo; n <= f.src.hi(); ++n)
        h.f.push_back(rep_compose(g.comp(n), f.f[n - f.src.lo]));
    return h;
}

CpxMor cpx_add(const CpxMor& a, const CpxMor& b) {
    CpxMor h = a;
    for (std::size_t k = 0; k < h.f.size(); ++k) h.f[k] = rep_add(h.f[k], b.f[k]);
    return h;
}

CpxMor cpx_sub(const CpxMor& a, const CpxMor& b) {
    CpxMor h = a;
    for (std::size_t k = 0; k < h.f.size(); ++k) h.f[k] = rep_sub(h.f[k], b.f[k]);
    return h;
}

CpxMor cpx_scale(const Q& c, const CpxMor& a) {
    CpxMor h = a;
    for (auto& m : h.f) m = rep_scale(c, m);
    return h;
}

std::size_t cpx_mor_dim(const Complex& a, const Complex& b) {
    std::size_t d = 0;
    for (long n = a.lo; n <= a.hi(); ++n) d += rep_mor_dim(a.at(n), b.at(n));
    return d;
}

QMat cpx_mor_coords(const CpxMor& m) {
    QMat v(cpx_mor_dim(m.src, m.tgt), 1);
    std::size_t off = 0;
    for (const auto& fn : m.f) {
        QMat c = rep_mor_coords(fn);
        for (std::size_t i = 0; i < c.rows(); ++i) v.at(off++, 0) = c.at(i, 0);
    }
    return v;
}

CpxMor cpx_mor_from_coords(const Complex& a, const Complex& b, const QMat& coords,
                           std::size_t col) {
    CpxMor m{a, b, {}};
    std::size_t off = 0;
    for (long n = a.lo; n <= a.hi(); ++n) {
        std::size_t d = rep_mor_dim(a.at(n), b.at(n));
        QMat slice(d, 1);
        for (std::size_t i = 0; i < d; ++i) slice.at(i, 0) = coords.at(off + i, col);
        m.f.push_back(rep_mor_from_coords(a.at(n), b.at(n), slice, 0));
        off += d;
    }
    return m;
}

std::vector<CpxMor> cpx_hom(const Complex& a, const Complex& b) {
    // Unknowns: coefficients in the per-degree hom bases; constraints: the
    // chain-map identity in every degree of the source window.
    std::vector<std::vector<RepMor>> bases;
    std::vector<std::size_t> off;
    std::size_t nvars = 0;
    for (long n = a.lo; n <= a.hi(); ++n) {
        bases.push_back(rep_hom(a.at(n), b.at(n)));
        off.push_back(nvars);
        nvars += bases.back().size();
    }
    std::vector<std::size_t> roff;
    std::size_t nrows = 0;
    for (long n = a.lo; n <= a.hi(); ++n) {
        roff.push_back(nrows);
        nrows += rep_mor_dim(a.at(n), b.at(n + 1));
    }
    QMat sys(nrows, nvars);
    for (long n = a.lo; n <= a.hi(); ++n) {
        std::size_t k = n - a.lo;
        for (std::size_t j = 0; j < bases[k].size(); ++j) {
            QMat up = rep_mor_coords(rep_compose(b.diff(n), bases[k][j]));
            for (std::size_t i = 0; i < up.rows(); ++i)
                sys.at(roff[k] + i, off[k] + j) += up.at(i, 0);
            if (n > a.lo) {
                QMat dn = rep_mor_coords(rep_compose(bases[k][j], a.diff(n - 1)));
                for (std::size_t i = 0; i < dn.rows(); ++i)
                    sys.at(roff[k - 1] + i, off[k] + j) -= dn.at(i, 0);
            }
        }
    }
    QMat ker = sys.kernel();
    std::vector<CpxMor> out;
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        CpxMor m = cpx_zero_mor(a, b);
        for (long n = a.lo; n <= a.hi(); ++n) {
            std::size_t k = n - a.lo;
            for (std::size_t j = 0; j < bases[k].size(); ++j)
                m.f[k] = rep_add(m.f[k], rep_scale(ker.at(off[k] + j, c), bases[k][j]));
        }
        out.push_back(std::move(m));
    }
    return out;
}

CpxMor cpx_kernel(const CpxMor& f) {
    Complex k{f.src.rep, f.src.lo, {}, {}};
    std::vector<RepMor> incl;
    for (std::size_t i = 0; i < f.f.size(); ++i) {
        RepMor ki = rep_kernel(f.f[i]);
        k.comps.push_back(ki.src);
        incl.push_back(ki);
    }
    for (std::size_t i = 0; i + 1 < incl.size(); ++i)
        k.diffs.push_back(RepCat::factor_through_mono(
            incl[i + 1], rep_compose(f.src.diffs[i], incl[i])));
    return CpxMor{k, f.src, std::move(incl)};
}

CpxMor cpx_cokernel(const CpxMor& f) {
    Complex c{f.tgt.rep, f.tgt.lo, {}, {}};
    std::vector<RepMor> proj;
    for (long n = f.tgt.lo; n <= f.tgt.hi(); ++n) {
        RepMor pn = rep_cokernel(f.comp(n));
        c.comps.push_back(pn.tgt);
        proj.push_back(pn);
    }
    for (std::size_t i = 0; i + 1 < proj.size(); ++i)
        c.diffs.push_back(RepCat::induced_from_cokernel(
            proj[i], rep_compose(proj[i + 1], f.tgt.diffs[i])));
    CpxMor out{f.tgt, c, {}};
    for (long n = f.tgt.lo; n <= f.tgt.hi(); ++n) out.f.push_back(proj[n - f.tgt.lo]);
    return out;
}

CpxSum cpx_direct_sum(const Complex& a, const Complex& b) {
    if (a.comps.empty() && b.comps.empty()) {
        Complex z = cpx_zero(a.rep);
        CpxMor zm{z, z, {}};
        return {z, zm, zm, zm, zm};
    }
    long lo = a.comps.empty() ? b.lo : (b.comps.empty() ? a.lo : std::min(a.lo, b.lo));
    long hi = a.comps.empty() ? b.hi() : (b.comps.empty() ? a.hi() : std::max(a.hi(), b.hi()));
    std::vector<RepSum> sums;
    Complex s{a.rep, lo, {}, {}};
    for (long n = lo; n <= hi; ++n) {
        sums.push_back(rep_direct_sum(a.at(n), b.at(n)));
        s.comps.push_back(sums.back().obj);
    }
    for (long n = lo; n < hi; ++n) {
        std::size_t k = n - lo;
        RepMor d = rep_add(rep_compose(sums[k + 1].inl, rep_compose(a.diff(n), sums[k].prl)),
                           rep_compose(sums[k + 1].inr, rep_compose(b.diff(n), sums[k].prr)));
        s.diffs.push_back(std::move(d));
    }
    CpxSum out{s, {a, s, {}}, {b, s, {}}, {s, a, {}}, {s, b, {}}};
    for (long n = a.lo; n <= a.hi(); ++n) out.inl.f.push_back(sums[n - lo].inl);
    for (long n = b.lo; n <= b.hi(); ++n) out.inr.f.push_back(sums[n - lo].inr);
    for (long n = lo; n <= hi; ++n) {
        out.prl.f.push_back(sums[n - lo].prl);
        out.prr.f.push_back(sums[n - lo].prr);
    }
    return out;
}

CpxPresentation cpx_presentation(const Complex& x) {
    Complex p = cpx_zero(x.rep);
    CpxMor epi = cpx_zero_mor(p, x);
    for (long n = x.lo; n <= x.hi(); ++n) {
        if (x.at(n).is_zero()) continue;
        RepPresentation rp = rep_presentation(x.at(n));
        Complex d = disc(rp.p, n);
        CpxMor g{d, x, {rp.epi, rep_compose(x.diff(n), rp.epi)}};
        CpxSum s = cpx_direct_sum(p, d);
        epi = cpx_add(cpx_compose(epi, s.prl), cpx_compose(g, s.prr));
        p = s.obj;
    }
    return CpxPresentation{p, epi, cpx_kernel(epi)};
}

bool CpxCat::is_iso(const CpxMor& m) {
    return m.degreewise_mono() && m.degreewise_epi();
}

bool cpx_isomorphic(const Complex& a, const Complex& b, unsigned seed) {
    long lo = std::min(a.lo, b.lo), hi = std::max(a.hi(), b.hi());
    for (long n = lo; n <= hi; ++n)
        if (a.at(n).dims != b.at(n).dims) return false;
    if (a.is_zero()) return true;
    auto basis = cpx_hom(a, b);
    if (basis.empty()) return false;
    for (const auto& f : basis)
        if (CpxCat::is_iso(f)) return true;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-6, 6);
    for (int attempt = 0; attempt < 40; ++attempt) {
        CpxMor f = cpx_zero_mor(a, b);
        for (const auto& e : basis) f = cpx_add(f, cpx_scale(Q(coef(rng)), e));
        if (CpxCat::is_iso(f)) return true;
    }
    return false;
}

Complex CpxCat::generator(const Complex& like) {
    long lo = like.comps.empty() ? -1 : like.lo - 1;
    long hi = like.comps.empty() ? 0 : like.hi();
    Rep g = RepCat::generator(rep_zero(like.rep));
    Complex out = cpx_zero(like.rep);
    for (long n = lo; n <= hi; ++n) out = cpx_direct_sum(out, disc(g, n)).obj;
    return out;
}

CpxMor CpxCat::induced_from_cokernel(const CpxMor& q, const CpxMor& t) {
    CpxMor u{q.tgt, t.tgt, {}};
    for (long n = q.tgt.lo; n <= q.tgt.hi(); ++n)
        u.f.push_back(RepCat::induced_from_cokernel(q.comp(n), t.comp(n)));
    return u;
}

CpxMor CpxCat::factor_through_mono(const CpxMor& i, const CpxMor& t) {
    CpxMor u{t.src, i.src, {}};
    for (long n = t.src.lo; n <= t.src.hi(); ++n)
        u.f.push_back(RepCat::factor_through_mono(i.comp(n), t.comp(n)));
    return u;
}

// ---------------------------------------------------------------------------
// Cohomology, cones, tilde classes.
// ---------------------------------------------------------------------------

RepMor cpx_cycles(const Complex& x, long n) { return rep_kernel(x.diff(n)); }

Rep cpx_cohomology_at(const Complex& x, long n) {
    RepMor z = cpx_cycles(x, n);
    RepMor b = RepCat::induced_into_kernel(z, x.diff(n - 1));
    return rep_cokernel(b).tgt;
}

std::vector<Rep> cohomology_objects(const Complex& x) {
    std::vector<Rep> out;
    for (long n = x.lo; n <= x.hi(); ++n) out.push_back(cpx_cohomology_at(x, n));
    return out;
}

bool is_acyclic(const Complex& x) {
    for (long n = x.lo; n <= x.hi(); ++n)
        if (!cpx_cohomology_at(x, n).is_zero()) return false;
    return true;
}

Complex cone(const CpxMor& f) {
    const Complex& x = f.src;
    const Complex& y = f.tgt;
    if (x.comps.empty() && y.comps.empty()) return cpx_zero(x.rep);
    long lo = std::min(x.lo - 1, y.lo), hi = std::max(x.hi() - 1, y.hi());
    std::vector<RepSum> sums;
    Complex c{x.rep, lo, {}, {}};
    for (long n = lo; n <= hi; ++n) {
        sums.push_back(rep_direct_sum(x.at(n + 1), y.at(n)));
        c.comps.push_back(sums.back().obj);
    }
    for (long n = lo; n < hi; ++n) {
        std::size_t k = n - lo;
        RepMor d = rep_compose(sums[k + 1].inl,
                               rep_compose(rep_scale(Q(-1), x.diff(n + 1)), sums[k].prl));
        d = rep_add(d, rep_compose(sums[k + 1].inr, rep_compose(f.comp(n + 1), sums[k].prl)));
        d = rep_add(d, rep_compose(sums[k + 1].inr, rep_compose(y.diff(n), sums[k].prr)));
        c.diffs.push_back(std::move(d));
    }
    return c;
}

bool is_in_tilde(const std::function<bool(const Rep&)>& pred, const Complex& x) {
    if (!is_acyclic(x)) return false;
    for (long n = x.lo; n <= x.hi(); ++n) {
        if (!pred(x.at(n))) return false;
        if (!pred(cpx_cycles(x, n).src)) return false;
    }
    return true;
}

bool is_in_dg_left(const std::vector<Rep>& b_set, const Complex& x, long nlo, long nhi) {
    for (const auto& b : b_set)
        for (long n = nlo; n <= nhi; ++n)
            if (ext1<CpxCat>(x, sphere(b, n)).dim != 0) return false;
    return true;
}

bool is_in_dg_right(const std::vector<Rep>& a_set, const Complex& x, long nlo, long nhi) {
    for (const auto& a : a_set)
        for (long n = nlo; n <= nhi; ++n)
            if (ext1<CpxCat>(sphere(a, n), x).dim != 0) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Lifted approximation sequence for acyclic complexes.
// ---------------------------------------------------------------------------

Conflation<CpxCat> lift_cotorsion_first(const std::vector<Rep>& s_set, const Complex& x,
                                        std::size_t budget) {
    if (x.is_zero()) {
        Complex z = cpx_zero(x.rep);
        CpxMor zi = cpx_zero_mor(x, z);
        return {zi, cpx_cokernel(zi)};
    }
    if (!is_acyclic(x))
        throw Error(ErrorKind::Internal, "lift_cotorsion: the complex must be acyclic");
    // Fixed approximations of the cocycle objects, shared between neighbouring
    // horseshoe squares so that the middle rows splice into a complex.
    std::vector<RepMor> cyc;        // inclusions Z^n -> X^n, n = lo .. hi+1
    std::vector<Conflation<RepCat>> ap;
    for (long n = x.lo; n <= x.hi() + 1; ++n) {
        cyc.push_back(cpx_cycles(x, n));
        ap.push_back(approximation_sequences<RepCat>(s_set, cyc.back().src, budget).first);
    }
    std::vector<HorseshoeResult<RepCat>> hs;
    for (long n = x.lo; n <= x.hi(); ++n) {
        std::size_t k = n - x.lo;
        Conflation<RepCat> top{cyc[k], RepCat::induced_into_kernel(cyc[k + 1], x.diff(n))};
        hs.push_back(horseshoe<RepCat>(top, ap[k], ap[k + 1]));
    }
    Complex b{x.rep, x.lo, {}, {}};
    for (const auto& h : hs) b.comps.push_back(h.middle.i.tgt);
    for (std::size_t k = 0; k + 1 < hs.size(); ++k)
        b.diffs.push_back(rep_compose(hs[k + 1].middle.i, hs[k].middle.d));
    CpxMor psi{x, b, {}};
    for (const auto& h : hs) psi.f.push_back(h.center.i);
    return {psi, cpx_cokernel(psi)};
}

// ---------------------------------------------------------------------------
// Ext adjunction.
// ---------------------------------------------------------------------------

ExtAdjunctionReport ext_adjunction_check(const Rep& x, const Complex& y, long n) {
    ExtAdjunctionReport rep;
    rep.module_side = ext1<RepCat>(x, cpx_cycles(y, n).src).dim;
    rep.complex_side = ext1<CpxCat>(sphere(x, n), y).dim;
    rep.mono = rep.module_side <= rep.complex_side;
    rep.iso = rep.module_side == rep.complex_side;
    rep.acyclic = is_acyclic(y);
    return rep;
}

// ---------------------------------------------------------------------------
// Tensor and internal hom on representations.
// ---------------------------------------------------------------------------

Rep rep_tensor(const Rep& a, const Rep& b) {
    Rep t;
    t.rep = a.rep;
    for (std::size_t i = 0; i < a.nv(); ++i) t.dims.push_back(a.dims[i] * b.dims[i]);
    for (auto [i, j] : a.rep->poset.strict_pairs())
        t.tr.insert({{i, j}, a.t(i, j).kron(b.t(i, j))});
    return t;
}

RepMor rep_tensor_mor(const RepMor& f, const RepMor& g) {
    RepMor h{rep_tensor(f.src, g.src), rep_tensor(f.tgt, g.tgt), {}};
    for (std::size_t i = 0; i < f.f.size(); ++i) h.f.push_back(f.f[i].kron(g.f[i]));
    return h;
}

Rep rep_unit(RingRepPtr r) {
    Rep u;
    u.rep = r;
    u.dims.assign(r->poset.size(), 1);
    for (auto [i, j] : r->poset.strict_pairs()) u.tr.insert({{i, j}, QMat::identity(1)});
    return u;
}

namespace {

std::vector<std::size_t> upset_of(const FinitePoset& p, std::size_t i) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < p.size(); ++j)
        if (i == j || p.less(i, j)) out.push_back(j);
    return out;
}

// Flat coordinates over the up-set: concatenated row-major vec of the blocks
// F_j: b(j) x a(j), in increasing j.
std::size_t upset_flat_dim(const Rep& a, const Rep& b, const std::vector<std::size_t>& up) {
    std::size_t d = 0;
    for (auto j : up) d += a.dims[j] * b.dims[j];
    return d;
}

QMat upset_family_basis(const Rep& a, const Rep& b, const std::vector<std::size_t>& up) {
    std::size_t nvars = upset_flat_dim(a, b, up);
    std::vector<std::size_t> off(a.nv(), 0);
    {
        std::size_t o = 0;
        for (auto j : up) {
            off[j] = o;
            o += a.dims[j] * b.dims[j];
        }
    }
    std::size_t nrows = 0;
    for (auto j : up)
        for (auto k : up)
            if (a.rep->poset.less(j, k)) nrows += b.dims[k] * a.dims[j];
    QMat sys(nrows, nvars);
    std::size_t r0 = 0;
    for (auto j : up)
        for (auto k : up) {
            if (!a.rep->poset.less(j, k)) continue;
            QMat lhs = QMat::identity(b.dims[k]).kron(a.t(j, k).transpose());
            QMat rhs = b.t(j, k).kron(QMat::identity(a.dims[j]));
            for (std::size_t r = 0; r < lhs.rows(); ++r) {
                for (std::size_t c = 0; c < lhs.cols(); ++c)
                    sys.at(r0 + r, off[k] + c) += lhs.at(r, c);
                for (std::size_t c = 0; c < rhs.cols(); ++c)
                    sys.at(r0 + r, off[j] + c) -= rhs.at(r, c);
            }
            r0 += lhs.rows();
        }
    return sys.kernel();
}

QMat require_solve(const QMat& a, const QMat& b, const char* what) {
    auto x = QMat::solve(a, b);
    if (!x) throw Error(ErrorKind::Internal, std::string("inconsistent solve in ") + what);
    return *x;
}

} // namespace

RepIHom rep_ihom(const Rep& a, const Rep& b) {
    RepIHom h;
    h.obj.rep = a.rep;
    const auto& poset = a.rep->poset;
    std::vector<std::vector<std::size_t>> ups;
    for (std::size_t i = 0; i < poset.size(); ++i) {
        ups.push_back(upset_of(poset, i));
        h.basis.push_back(upset_family_basis(a, b, ups.back()));
        h.obj.dims.push_back(h.basis.back().cols());
    }
    for (auto [i, l] : poset.strict_pairs()) {
        // Restriction of a family on up(i) to up(l): coordinate projection.
        QMat proj(upset_flat_dim(a, b, ups[l]), upset_flat_dim(a, b, ups[i]));
        std::size_t ro = 0;
        for (auto j : ups[l]) {
            std::size_t co = 0;
            for (auto k : ups[i]) {
                if (k == j)
                    for (std::size_t t = 0; t < a.dims[j] * b.dims[j]; ++t)
                        proj.at(ro + t, co + t) = 1;
                co += a.dims[k] * b.dims[k];
            }
            ro += a.dims[j] * b.dims[j];
        }
        h.obj.tr.insert({{i, l}, require_solve(h.basis[l], proj * h.basis[i], "rep_ihom")});
    }
    return h;
}

namespace {

// Operator on the flat up-set coordinates: blockwise F_j -> g_j * F_j (post)
// or F_j -> F_j * f_j (pre), in row-major vec form.
RepMor ihom_induced(const Rep& a_src, const Rep& b_src, const Rep& a_tgt, const Rep& b_tgt,
                    const std::function<QMat(std::size_t)>& block) {
    RepIHom hs = rep_ihom(a_src, b_src);
    RepIHom ht = rep_ihom(a_tgt, b_tgt);
    const auto& poset = a_src.rep->poset;
    RepMor m{hs.obj, ht.obj, {}};
    for (std::size_t i = 0; i < poset.size(); ++i) {
        auto up = upset_of(poset, i);
        std::size_t rows = upset_flat_dim(a_tgt, b_tgt, up);
        std::size_t cols = upset_flat_dim(a_src, b_src, up);
        QMat op(rows, cols);
        std::size_t ro = 0, co = 0;
        for (auto j : up) {
            QMat blk = block(j); // (a_tgt*b_tgt)_j x (a_src*b_src)_j
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (std::size_t c = 0; c < blk.cols(); ++c) op.at(ro + r, co + c) = blk.at(r, c);
            ro += blk.rows();
            co += blk.cols();
        }
        m.f.push_back(require_solve(ht.basis[i], op * hs.basis[i], "ihom_induced"));
    }
    return m;
}

} // namespace

RepMor rep_ihom_post(const Rep& a, const RepMor& g) {
    return ihom_induced(a, g.src, a, g.tgt, [&](std::size_t j) {
        return g.f[j].kron(QMat::identity(a.dims[j]));
    });
}

RepMor rep_ihom_pre(const RepMor& f, const Rep& b) {
    return ihom_induced(f.tgt, b, f.src, b, [&](std::size_t j) {
        return QMat::identity(b.dims[j]).kron(f.f[j].transpose());
    });
}

// ---------------------------------------------------------------------------
// Tensor and hom complexes.
// ---------------------------------------------------------------------------

namespace {

std::vector<std::pair<long, long>> tensor_summands(const Complex& x, const Complex& y, long n) {
    std::vector<std::pair<long, long>> out;
    for (long i = std::max(x.lo, n - y.hi()); i <= std::min(x.hi(), n - y.lo); ++i)
        out.push_back({i, n - i});
    return out;
}

// Direct sum of tensors over a summand list, built in place.
Rep tensor_degree(const Complex& x, const Complex& y,
                  const std::vector<std::pair<long, long>>& ss) {
    Rep t;
    t.rep = x.rep;
    std::size_t nv = x.rep->poset.size();
    t.dims.assign(nv, 0);
    for (auto [i, j] : ss)
        for (std::size_t v = 0; v < nv; ++v) t.dims[v] += x.at(i).dims[v] * y.at(j).dims[v];
    for (auto [a, b] : x.rep->poset.strict_pairs()) {
        QMat m(t.dims[b], t.dims[a]);
        std::size_t ro = 0, co = 0;
        for (auto [i, j] : ss) {
            QMat blk = x.at(i).t(a, b).kron(y.at(j).t(a, b));
            for (std::size_t r = 0; r < blk.rows(); ++r)
                for (std::size_t c = 0; c < blk.cols(); ++c) m.at(ro + r, co + c) = blk.at(r, c);
            ro += blk.rows();
            co += blk.cols();
        }
        t.tr.insert({{a, b}, std::move(m)});
    }
    return t;
}

// Offset of each summand inside the flat degree object, per vertex.
std::vector<std::size_t> summand_offsets(const Complex& x, const Complex& y,
                                         const std::vector<std::pair<long, long>>& ss,
                                         std::size_t v) {
    std::vector<std::size_t> off;
    std::size_t o = 0;
    for (auto [i, j] : ss) {
        off.push_back(o);
        o += x.at(i).dims[v] * y.at(j).dims[v];
    }
    return off;
}

void place_block(QMat& m, std::size_t r0, std::size_t c0, const QMat& blk) {
    for (std::size_t r = 0; r < blk.rows(); ++r)
        for (std::size_t c = 0; c < blk.cols(); ++c) m.at(r0 + r, c0 + c) += blk.at(r, c);
}

} // namespace

CpxTensor tensor_complexes(const Complex& x, const Complex& y) {
    CpxTensor out;
    if (x.comps.empty() || y.comps.empty()) {
        out.obj = cpx_zero(x.rep);
        return out;
    }
    long lo = x.lo + y.lo, hi = x.hi() + y.hi();
    out.obj.rep = x.rep;
    out.obj.lo = lo;
    for (long n = lo; n <= hi; ++n) {
        out.summands.push_back(tensor_summands(x, y, n));
        out.obj.comps.push_back(tensor_degree(x, y, out.summands.back()));
    }
    std::size_t nv = x.rep->poset.size();
    for (long n = lo; n < hi; ++n) {
        const auto& src = out.summands[n - lo];
        const auto& tgt = out.summands[n + 1 - lo];
        RepMor d{out.obj.comps[n - lo], out.obj.comps[n + 1 - lo], {}};
        for (std::size_t v = 0; v < nv; ++v) {
            QMat m(d.tgt.dims[v], d.src.dims[v]);
            auto soff = summand_offsets(x, y, src, v);
            auto toff = summand_offsets(x, y, tgt, v);
            for (std::size_t s = 0; s < src.size(); ++s) {
                auto [i, j] = src[s];
                Q sign = (i % 2 == 0) ? Q(1) : Q(-1);
                for (std::size_t t = 0; t < tgt.size(); ++t) {
                    if (tgt[t] == std::make_pair(i + 1, j))
                        place_block(m, toff[t], soff[s],
                                    x.diff(i).f[v].kron(QMat::identity(y.at(j).dims[v])));
                    if (tgt[t] == std::make_pair(i, j + 1))
                        place_block(m, toff[t], soff[s],
                                    (QMat::identity(x.at(i).dims[v]).kron(y.diff(j).f[v])) * sign);
                }
            }
            d.f.push_back(std::move(m));
        }
        out.obj.diffs.push_back(std::move(d));
    }
    return out;
}

CpxMor tensor_cpx_mor(const CpxMor& f, const CpxMor& g) {
    CpxTensor ts = tensor_complexes(f.src, g.src);
    CpxTensor tt = tensor_complexes(f.tgt, g.tgt);
    CpxMor out = cpx_zero_mor(ts.obj, tt.obj);
    std::size_t nv = f.src.rep->poset.size();
    for (long n = ts.obj.lo; n <= ts.obj.hi(); ++n) {
        const auto& src = ts.summands[n - ts.obj.lo];
        if (!tt.obj.in_window(n)) continue;
        const auto& tgt = tt.summands[n - tt.obj.lo];
        for (std::size_t v = 0; v < nv; ++v) {
            QMat& m = out.f[n - ts.obj.lo].f[v];
            auto soff = summand_offsets(f.src, g.src, src, v);
            auto toff = summand_offsets(f.tgt, g.tgt, tgt, v);
            for (std::size_t s = 0; s < src.size(); ++s)
                for (std::size_t t = 0; t < tgt.size(); ++t)
                    if (src[s] == tgt[t]) {
                        auto [i, j] = src[s];
                        place_block(m, toff[t], soff[s], f.comp(i).f[v].kron(g.comp(j).f[v]));
                    }
        }
    }
    return out;
}

Complex unit_complex(RingRepPtr r) { return sphere(rep_unit(r), 0); }

Complex hom_complexes(const Complex& y, const Complex& z) {
    if (y.comps.empty() || z.comps.empty()) return cpx_zero(y.rep);
    long lo = z.lo - y.hi(), hi = z.hi() - y.lo;
    std::size_t nv = y.rep->poset.size();
    // Summand i at degree n: IHom(Y^i, Z^{i+n}).
    auto summands = [&](long n) {
        std::vector<long> out;
        for (long i = std::max(y.lo, z.lo - n); i <= std::min(y.hi(), z.hi() - n); ++i)
            out.push_back(i);
        return out;
    };
    std::vector<std::vector<long>> ss;
    std::vector<std::vector<Rep>> parts;
    Complex h{y.rep, lo, {}, {}};
    for (long n = lo; n <= hi; ++n) {
        ss.push_back(summands(n));
        parts.push_back({});
        Rep deg;
        deg.rep = y.rep;
        deg.dims.assign(nv, 0);
        for (long i : ss.back()) {
            parts.back().push_back(rep_ihom(y.at(i), z.at(i + n)).obj);
            for (std::size_t v = 0; v < nv; ++v) deg.dims[v] += parts.back().back().dims[v];
        }
        for (auto [a, b] : y.rep->poset.strict_pairs()) {
            QMat m(deg.dims[b], deg.dims[a]);
            std::size_t ro = 0, co = 0;
            for (const auto& p : parts.back()) {
                place_block(m, ro, co, p.t(a, b));
                ro += p.dims[b];
                co += p.dims[a];
            }
            deg.tr.insert({{a, b}, std::move(m)});
        }
        h.comps.push_back(std::move(deg));
    }
    auto offsets = [&](std::size_t k, std::size_t v) {
        std::vector<std::size_t> off;
        std::size_t o = 0;
        for (const auto& p : parts[k]) {
            off.push_back(o);
            o += p.dims[v];
        }
        return off;
    };
    for (long n = lo; n < hi; ++n) {
        std::size_t k = n - lo;
        Q sign = (n % 2 == 0) ? Q(1) : Q(-1); // the second term carries -(-1)^n
        RepMor d{h.comps[k], h.comps[k + 1], {}};
        std::vector<QMat> mats;
        for (std::size_t v = 0; v < nv; ++v) mats.push_back(QMat(h.comps[k + 1].dims[v], h.comps[k].dims[v]));
        for (std::size_t s = 0; s < ss[k].size(); ++s) {
            long i = ss[k][s];
            // Postcomposition: lands in summand i of degree n+1.
            auto it = std::find(ss[k + 1].begin(), ss[k + 1].end(), i);
            if (it != ss[k + 1].end()) {
                RepMor post = rep_ihom_post(y.at(i), z.diff(i + n));
                std::size_t t = it - ss[k + 1].begin();
                for (std::size_t v = 0; v < nv; ++v)
                    place_block(mats[v], offsets(k + 1, v)[t], offsets(k, v)[s], post.f[v]);
            }
            // Precomposition: lands in summand i-1 of degree n+1, with sign.
            auto it2 = std::find(ss[k + 1].begin(), ss[k + 1].end(), i - 1);
            if (it2 != ss[k + 1].end()) {
                RepMor pre = rep_ihom_pre(y.diff(i - 1), z.at(i + n));
                std::size_t t = it2 - ss[k + 1].begin();
                for (std::size_t v = 0; v < nv; ++v)
                    place_block(mats[v], offsets(k + 1, v)[t], offsets(k, v)[s],
                                pre.f[v] * (sign * Q(-1)));
            }
        }
        d.f = std::move(mats);
        h.diffs.push_back(std::move(d));
    }
    return h;
}

// ---------------------------------------------------------------------------
// Pushout products.
// ---------------------------------------------------------------------------

PushoutProduct pushout_product(const CpxMor& f, const CpxMor& g) {
    CpxMor a = tensor_cpx_mor(cpx_id(f.src), g); // X (x) Y -> X (x) Y'
    CpxMor b = tensor_cpx_mor(f, cpx_id(g.src)); // X (x) Y -> X' (x) Y
    PushoutProduct out{cpx_zero_mor(cpx_zero(f.src.rep), cpx_zero(f.src.rep)),
                       pushout<CpxCat>(a, b)};
    CpxMor ta = tensor_cpx_mor(f, cpx_id(g.tgt));      // X (x) Y' -> X' (x) Y'
    CpxMor tb = tensor_cpx_mor(cpx_id(f.tgt), g);      // X' (x) Y -> X' (x) Y'
    CpxMor t = cpx_add(cpx_compose(ta, out.corner.sum.prl),
                       cpx_compose(tb, out.corner.sum.prr));
    out.map = CpxCat::induced_from_cokernel(out.corner.proj, t);
    return out;
}

CheckReport quillen_bifunctor_check(const CpxMor& f, const CpxMor& g,
                                    const std::function<bool(const Complex&)>& cof) {
    CheckReport rep;
    RingRepPtr r = f.src.rep;
    rep.items.push_back({"tensor unit is cofibrant", cof(unit_complex(r)), ""});
    bool fc = f.degreewise_mono() && cof(cpx_cokernel(f).tgt);
    bool gc = g.degreewise_mono() && cof(cpx_cokernel(g).tgt);
    rep.items.push_back({"inputs are cofibrations", fc && gc, ""});
    PushoutProduct pp = pushout_product(f, g);
    rep.items.push_back({"pushout product is an inflation", pp.map.degreewise_mono(), ""});
    Complex ck = cpx_cokernel(pp.map).tgt;
    Complex cf = cpx_cokernel(f).tgt, cg = cpx_cokernel(g).tgt;
    Complex ct = tensor_complexes(cf, cg).obj;
    rep.items.push_back({"cokernel of the pushout product is coker f (x) coker g",
                         cpx_isomorphic(ck, ct), ""});
    rep.items.push_back({"cokernel of the pushout product is cofibrant", cof(ck), ""});
    if (is_acyclic(cf) || is_acyclic(cg))
        rep.items.push_back({"triviality propagates to the pushout product",
                             is_acyclic(ck), ""});
    return rep;
}

// ---------------------------------------------------------------------------
// Diagram-module complexes (data level, tensor over arbitrary ring diagrams).
// ---------------------------------------------------------------------------

DiagModule diag_tensor(const DiagModule& a, const DiagModule& b) {
    DiagModule t;
    t.rep = a.rep;
    for (std::size_t i = 0; i < a.vertex.size(); ++i)
        t.vertex.push_back(fp_tensor(a.at(i), b.at(i)));
    for (auto [i, j] : a.rep->poset.strict_pairs())
        t.trans.insert({{i, j}, ring_kron(a.transition(i, j), b.transition(i, j))});
    return t;
}

DiagMorphism diag_tensor_mor(const DiagMorphism& f, const DiagMorphism& g) {
    DiagMorphism h{diag_tensor(f.src, g.src), diag_tensor(f.tgt, g.tgt), {}};
    for (std::size_t i = 0; i < f.f.size(); ++i) h.f.push_back(ring_kron(f.f[i], g.f[i]));
    return h;
}

bool DiagComplex::valid() const {
    if (comps.empty()) return diffs.empty();
    if (diffs.size() + 1 != comps.size()) return false;
    for (const auto& d : diffs)
        if (!diag_morphism_valid(d)) return false;
    for (std::size_t k = 0; k + 1 < diffs.size(); ++k) {
        DiagMorphism sq = diag_compose(diffs[k + 1], diffs[k]);
        // d^2 = 0 as maps of presented modules: every column of every vertex
        // matrix must lie in the relation image of the target.
        for (std::size_t v = 0; v < sq.f.size(); ++v)
            for (std::size_t c = 0; c < sq.f[v].cols(); ++c)
                if (!sq.tgt.at(v).relation_member(sq.f[v].column(c))) return false;
    }
    return true;
}

DiagComplex diag_sphere(const DiagModule& m, long n) {
    if (m.is_zero()) return DiagComplex{m.rep, 0, {}, {}};
    return DiagComplex{m.rep, n, {m}, {}};
}

DiagComplex diag_unit_complex(RingRepPtr r) {
    DiagModule u;
    u.rep = r;
    for (std::size_t i = 0; i < r->poset.size(); ++i) {
        FPModule f = FPModule::free(r->ring(i), 1);
        f.grading = std::vector<long>{0};
        u.vertex.push_back(f);
    }
    for (auto [i, j] : r->poset.strict_pairs())
        u.trans.insert({{i, j}, RingMatrix::identity(r->ring(j), 1)});
    return diag_sphere(u, 0);
}

namespace {

DiagModule diag_at(const DiagComplex& x, long n) {
    if (n >= x.lo && n <= x.hi()) return x.comps[n - x.lo];
    return zero_module(x.rep);
}

DiagMorphism diag_diff(const DiagComplex& x, long n) {
    if (n >= x.lo && n < x.hi()) return x.diffs[n - x.lo];
    return diag_zero(diag_at(x, n), diag_at(x, n + 1));
}

RingMatrix ring_scale(const RingMatrix& m, const Q& c) {
    RingMatrix out = m;
    RingElement s(m.ring(), c);
    for (std::size_t i = 0; i < out.rows(); ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out.at(i, j) = out.at(i, j) * s;
    return out;
}

} // namespace

DiagComplex tensor_diag_complexes(const DiagComplex& x, const DiagComplex& y) {
    if (x.comps.empty() || y.comps.empty()) return DiagComplex{x.rep, 0, {}, {}};
    long lo = x.lo + y.lo, hi = x.hi() + y.hi();
    DiagComplex out{x.rep, lo, {}, {}};
    auto summands = [&](long n) {
        std::vector<std::pair<long, long>> s;
        for (long i = std::max(x.lo, n - y.hi()); i <= std::min(x.hi(), n - y.lo); ++i)
            s.push_back({i, n - i});
        return s;
    };
    for (long n = lo; n <= hi; ++n) {
        DiagModule deg = zero_module(x.rep);
        for (auto [i, j] : summands(n))
            deg = direct_sum(deg, diag_tensor(diag_at(x, i), diag_at(y, j)));
        out.comps.push_back(std::move(deg));
    }
    for (long n = lo; n < hi; ++n) {
        auto src = summands(n), tgt = summands(n + 1);
        DiagMorphism d = diag_zero(out.comps[n - lo], out.comps[n + 1 - lo]);
        for (std::size_t v = 0; v < x.rep->poset.size(); ++v) {
            std::vector<std::size_t> soff, toff;
            std::size_t o = 0;
            for (auto [i, j] : src) {
                soff.push_back(o);
                o += diag_at(x, i).at(v).gens * diag_at(y, j).at(v).gens;
            }
            o = 0;
            for (auto [i, j] : tgt) {
                toff.push_back(o);
                o += diag_at(x, i).at(v).gens * diag_at(y, j).at(v).gens;
            }
            for (std::size_t s = 0; s < src.size(); ++s) {
                auto [i, j] = src[s];
                Q sign = (i % 2 == 0) ? Q(1) : Q(-1);
                for (std::size_t t = 0; t < tgt.size(); ++t) {
                    RingMatrix blk(x.rep->ring(v), 0, 0);
                    bool have = false;
                    if (tgt[t] == std::make_pair(i + 1, j)) {
                        blk = ring_kron(diag_diff(x, i).f[v],
                                        RingMatrix::identity(x.rep->ring(v),
                                                             diag_at(y, j).at(v).gens));
                        have = true;
                    } else if (tgt[t] == std::make_pair(i, j + 1)) {
                        blk = ring_scale(
                            ring_kron(RingMatrix::identity(x.rep->ring(v),
                                                           diag_at(x, i).at(v).gens),
                                      diag_diff(y, j).f[v]),
                            sign);
                        have = true;
                    }
                    if (!have) continue;
                    for (std::size_t r = 0; r < blk.rows(); ++r)
                        for (std::size_t c = 0; c < blk.cols(); ++c)
                            d.f[v].at(toff[t] + r, soff[s] + c) =
                                d.f[v].at(toff[t] + r, soff[s] + c) + blk.at(r, c);
                }
            }
        }
        out.diffs.push_back(std::move(d));
    }
    return out;
}

} // namespace qcoh
