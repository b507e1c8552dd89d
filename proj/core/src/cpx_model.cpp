#include "qcoh/cpx_model.hpp"

namespace qcoh {

namespace {

Conflation<CpxCat> zero_conflation(RingRepPtr r, const Complex& x) {
    Complex z = cpx_zero(r);
    if (x.is_zero()) {
        CpxMor zi = cpx_zero_mor(x, z);
        return {zi, cpx_cokernel(zi)};
    }
    CpxMor i = cpx_zero_mor(z, x);
    return {i, cpx_id(x)};
}

RepMor injective_embedding(const std::vector<Rep>& s_set, const Rep& x, std::size_t budget) {
    if (x.is_zero()) return rep_id(x);
    return approximation_sequences<RepCat>(s_set, x, budget).first.i;
}

} // namespace

Conflation<CpxCat> tilde_injective_first(const std::vector<Rep>& s_set, const Complex& x,
                                         std::size_t budget) {
    if (x.is_zero()) {
        CpxMor zi = cpx_zero_mor(x, cpx_zero(x.rep));
        return {zi, cpx_cokernel(zi)};
    }
    Complex di = cpx_zero(x.rep);
    CpxMor iota = cpx_zero_mor(x, di);
    for (long n = x.lo; n <= x.hi(); ++n) {
        if (x.at(n).is_zero()) continue;
        RepMor j = injective_embedding(s_set, x.at(n), budget);
        Complex piece = disc(j.tgt, n - 1);
        // Adjoint of j: degree n component j, degree n-1 component j after d.
        CpxMor g = cpx_zero_mor(x, piece);
        g.f[n - x.lo] = j;
        if (n - 1 >= x.lo) g.f[n - 1 - x.lo] = rep_compose(j, x.diff(n - 1));
        CpxSum s = cpx_direct_sum(di, piece);
        iota = cpx_add(cpx_compose(s.inl, iota), cpx_compose(s.inr, g));
        di = s.obj;
    }
    return {iota, cpx_cokernel(iota)};
}

Conflation<CpxCat> dg_injective_first(const std::vector<Rep>& s_set, const Complex& x,
                                      std::size_t budget) {
    if (x.is_zero()) {
        CpxMor zi = cpx_zero_mor(x, cpx_zero(x.rep));
        return {zi, cpx_cokernel(zi)};
    }
    long lo = x.lo, hi = x.hi();
    // Degreewise length-one coresolutions 0 -> X^n -> I^n -> C^n -> 0.
    std::vector<RepMor> j, q;
    for (long n = lo; n <= hi; ++n) {
        j.push_back(injective_embedding(s_set, x.at(n), budget));
        q.push_back(rep_cokernel(j.back()));
    }
    Rep zero = rep_zero(x.rep);
    auto I_at = [&](long n) { return n >= lo && n <= hi ? j[n - lo].tgt : zero; };
    auto C_at = [&](long n) { return n >= lo && n <= hi ? q[n - lo].tgt : zero; };
    // Lift the differential to the injectives: delta j = j d.
    std::vector<RepMor> delta;
    for (long n = lo; n <= hi; ++n) {
        if (n == hi) {
            delta.push_back(rep_zero_mor(I_at(n), zero));
            continue;
        }
        RepMor u = rep_compose(j[n + 1 - lo], x.diff(n));
        auto sol = hom_solve<RepCat>(I_at(n), I_at(n + 1), &j[n - lo], &u, nullptr, nullptr);
        if (!sol)
            throw Error(ErrorKind::Internal,
                        "dg_injective_first: extension along an inflation failed");
        delta.push_back(*sol);
    }
    auto delta_at = [&](long n) {
        return n >= lo && n <= hi ? delta[n - lo] : rep_zero_mor(I_at(n), I_at(n + 1));
    };
    auto q_at = [&](long n) {
        return n >= lo && n <= hi ? q[n - lo] : rep_zero_mor(I_at(n), C_at(n));
    };
    // delta^2 kills the image of j, so it factors through the cokernel; the
    // induced differential on the cokernels travels with it.
    auto hbar_at = [&](long n) -> RepMor {
        if (n < lo || n > hi) return rep_zero_mor(C_at(n), I_at(n + 2));
        return RepCat::induced_from_cokernel(q[n - lo],
                                             rep_compose(delta_at(n + 1), delta_at(n)));
    };
    auto kbar_at = [&](long n) -> RepMor {
        if (n < lo || n > hi) return rep_zero_mor(C_at(n), C_at(n + 1));
        return RepCat::induced_from_cokernel(q[n - lo],
                                             rep_compose(q_at(n + 1), delta_at(n)));
    };
    // Totalization B^n = I^n (+) C^{n-1}, d(i, c) = (delta i + hbar c, -q i - kbar c).
    std::vector<RepSum> sums;
    Complex b{x.rep, lo, {}, {}};
    for (long n = lo; n <= hi + 1; ++n) {
        sums.push_back(rep_direct_sum(I_at(n), C_at(n - 1)));
        b.comps.push_back(sums.back().obj);
    }
    for (long n = lo; n <= hi; ++n) {
        std::size_t k = n - lo;
        RepMor top = rep_add(rep_compose(delta_at(n), sums[k].prl),
                             rep_compose(hbar_at(n - 1), sums[k].prr));
        RepMor bot = rep_add(rep_compose(q_at(n), sums[k].prl),
                             rep_compose(kbar_at(n - 1), sums[k].prr));
        b.diffs.push_back(rep_add(rep_compose(sums[k + 1].inl, top),
                                  rep_compose(sums[k + 1].inr, rep_scale(Q(-1), bot))));
    }
    CpxMor eta{x, b, {}};
    for (long n = lo; n <= hi; ++n)
        eta.f.push_back(rep_compose(sums[n - lo].inl, j[n - lo]));
    return {eta, cpx_cokernel(eta)};
}

Conflation<CpxCat> dg_injective_second(const std::vector<Rep>& s_set, const Complex& x,
                                       std::size_t budget) {
    if (x.is_zero()) return zero_conflation(x.rep, x);
    CpxPresentation pres = cpx_presentation(x);
    Conflation<CpxCat> fk = dg_injective_first(s_set, pres.ker_incl.src, budget);
    // Pushout of  B' <- K -> P  and the induced deflation onto X.
    auto po = pushout<CpxCat>(fk.i, pres.ker_incl);
    CpxMor t = cpx_compose(pres.epi, po.sum.prr);
    CpxMor d = CpxCat::induced_from_cokernel(po.proj, t);
    return {po.from_b, d};
}

HoveyTriple<CpxCat> cpx_injective_triple(std::vector<Rep> s_set, std::size_t budget) {
    auto set = std::make_shared<std::vector<Rep>>(std::move(s_set));
    auto inj = [set](const Rep& u) {
        for (const auto& s : *set)
            if (ext1<RepCat>(s, u).dim != 0) return false;
        return true;
    };
    HoveyTriple<CpxCat> t;
    t.cof = [](const Complex&) { return true; };
    t.weq = [](const Complex& c) { return is_acyclic(c); };
    t.fib = [inj](const Complex& c) {
        for (const auto& u : c.comps)
            if (!inj(u)) return false;
        return true;
    };
    t.ctf.left = t.cof;
    t.ctf.right = [inj](const Complex& c) { return is_in_tilde(inj, c); };
    t.ctf.first = [set, budget](const Complex& c) {
        return tilde_injective_first(*set, c, budget);
    };
    t.ctf.second = [](const Complex& c) { return zero_conflation(c.rep, c); };
    t.tcf.left = t.weq;
    t.tcf.right = t.fib;
    t.tcf.first = [set, budget](const Complex& c) {
        return dg_injective_first(*set, c, budget);
    };
    t.tcf.second = [set, budget](const Complex& c) {
        return dg_injective_second(*set, c, budget);
    };
    return t;
}

} // namespace qcoh
