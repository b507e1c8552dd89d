#pragma once

#include <functional>
#include <memory>
#include <random>

#include "qcoh/homotopy.hpp"

namespace qcoh {

// Exact model structures described by a triple of object classes (C, W, F)
// together with the two complete cotorsion pairs (C, W∩F) and (C∩W, F).
// Everything here is generic over the same category trait as the homological
// engine, so the structures apply both to poset representations and to the
// bounded-complex category built on top of them.

template <class C>
struct CotorsionPair {
    std::function<bool(const typename C::Obj&)> left, right;
    // first(X): conflation X -> B_X -> A_X with B_X in the right class and
    // A_X in the left class; second(X): B^X -> A^X -> X with A^X left, B^X right.
    std::function<Conflation<C>(const typename C::Obj&)> first, second;
};

template <class C>
struct HoveyTriple {
    std::function<bool(const typename C::Obj&)> cof, weq, fib; // C, W, F
    CotorsionPair<C> ctf; // (C, W∩F)
    CotorsionPair<C> tcf; // (C∩W, F)
};

// ---------------------------------------------------------------------------
// Retracts (decided by randomized section search, like isomorphism testing).
// ---------------------------------------------------------------------------

template <class C>
bool is_retract(const typename C::Obj& u, const typename C::Obj& w, unsigned seed = 7) {
    if (C::is_zero_obj(u)) return true;
    if (C::qdim(u) > C::qdim(w)) return false;
    if (C::qdim(u) == C::qdim(w)) return C::isomorphic(u, w);
    auto sections = C::hom(u, w);
    if (sections.empty()) return false;
    auto idu = C::id(u);
    auto admits_retraction = [&](const typename C::Mor& s) {
        return hom_solve<C>(w, u, &s, &idu, nullptr, nullptr).has_value();
    };
    for (const auto& s : sections)
        if (admits_retraction(s)) return true;
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-5, 5);
    for (int attempt = 0; attempt < 40; ++attempt) {
        auto s = C::zero_mor(u, w);
        for (const auto& b : sections) s = C::add(s, C::scale(Q(coef(rng)), b));
        if (admits_retraction(s)) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Triple verification over a finite universe.
// ---------------------------------------------------------------------------

namespace model_detail {

// All conflations the checks sample between universe objects: every split
// conflation and every basis witness of ext1(c, a).
template <class C>
std::vector<Conflation<C>> sample_conflations(const std::vector<typename C::Obj>& universe) {
    std::vector<Conflation<C>> out;
    for (const auto& a : universe)
        for (const auto& c : universe) {
            out.push_back(split_conflation<C>(a, c));
            auto e = ext1<C>(c, a);
            for (auto& w : ext1_witnesses<C>(e)) out.push_back(std::move(w));
        }
    return out;
}

template <class C>
void check_pair(CheckReport& rep, const std::string& tag, const CotorsionPair<C>& pair,
                const std::vector<typename C::Obj>& universe,
                const std::function<std::string(const typename C::Obj&)>& name) {
    CheckItem orth{tag + ": ext1-orthogonality", true, ""};
    CheckItem maxl{tag + ": left class maximal in universe", true, ""};
    CheckItem maxr{tag + ": right class maximal in universe", true, ""};
    for (const auto& a : universe) {
        bool right_perp = true, left_perp = true;
        for (const auto& b : universe) {
            std::size_t d = ext1<C>(a, b).dim;
            if (pair.left(a) && pair.right(b) && d != 0) {
                orth.pass = false;
                orth.witness = "ext1(" + name(a) + ", " + name(b) + ") != 0";
            }
            if (pair.right(b) && d != 0) right_perp = false;
            if (pair.left(b) && ext1<C>(b, a).dim != 0) left_perp = false;
        }
        if (right_perp && !pair.left(a)) {
            maxl.pass = false;
            maxl.witness = name(a) + " is left-orthogonal to the right class but excluded";
        }
        if (left_perp && !pair.right(a)) {
            maxr.pass = false;
            maxr.witness = name(a) + " is right-orthogonal to the left class but excluded";
        }
    }
    rep.items.push_back(orth);
    rep.items.push_back(maxl);
    rep.items.push_back(maxr);

    CheckItem comp{tag + ": completeness (approximation sequences)", true, ""};
    for (const auto& u : universe) {
        auto fst = pair.first(u);
        auto snd = pair.second(u);
        bool ok = conflation_valid<C>(fst) && conflation_valid<C>(snd) &&
                  pair.right(fst.i.tgt) && pair.left(fst.d.tgt) &&
                  pair.left(snd.d.src) && pair.right(snd.i.src);
        if (!ok) {
            comp.pass = false;
            comp.witness = "approximation of " + name(u) + " leaves the classes";
        }
    }
    rep.items.push_back(comp);
}

} // namespace model_detail

template <class C>
CheckReport verify_triple(const HoveyTriple<C>& t, const std::vector<typename C::Obj>& universe,
                          std::function<std::string(const typename C::Obj&)> name =
                              [](const typename C::Obj&) { return std::string("?"); },
                          std::size_t cap = 64) {
    if (universe.size() > cap)
        throw Error(ErrorKind::UniverseTooLarge, "verify_triple: universe exceeds the size cap");
    CheckReport rep;
    if (universe.empty()) {
        rep.items.push_back({"universe is empty: all axioms hold vacuously", true, ""});
        return rep;
    }

    CheckItem retr{"trivial class closed under retracts", true, ""};
    for (const auto& w : universe) {
        if (!t.weq(w)) continue;
        for (const auto& u : universe)
            if (is_retract<C>(u, w) && !t.weq(u)) {
                retr.pass = false;
                retr.witness = name(u) + " is a retract of " + name(w) + " but not trivial";
            }
    }
    rep.items.push_back(retr);

    CheckItem two3{"2-out-of-3 for extensions", true, ""};
    for (const auto& c : model_detail::sample_conflations<C>(universe)) {
        int in_w = int(t.weq(c.i.src)) + int(t.weq(c.i.tgt)) + int(t.weq(c.d.tgt));
        if (in_w == 2) {
            two3.pass = false;
            two3.witness = "a conflation with exactly two trivial terms (middle " +
                           name(c.i.tgt) + ")";
        }
    }
    rep.items.push_back(two3);

    model_detail::check_pair<C>(rep, "(C, W∩F)", t.ctf, universe, name);
    model_detail::check_pair<C>(rep, "(C∩W, F)", t.tcf, universe, name);
    return rep;
}

// ---------------------------------------------------------------------------
// Factorizations.
// ---------------------------------------------------------------------------

enum class FactorKind { CofTrivFib, TrivCofFib };

template <class C>
struct Factorization {
    typename C::Mor f; // left-class inflation
    typename C::Mor g; // right-class deflation, g∘f = h
    typename C::Obj coker_f, ker_g; // membership witnesses
};

// h = g∘f with f an inflation whose cokernel lies in the pair's left class and
// g a deflation whose kernel lies in its right class. Two moves: widen the
// codomain to X ⊕ A^Y using the second sequence of Y (this makes the map a
// deflation while the added cokernel stays in the left class), then push the
// kernel K out along its first sequence K -> B_K so the final kernel lands in
// the right class.
template <class C>
Factorization<C> factorize_by_pair(const typename C::Mor& h, const CotorsionPair<C>& pair) {
    const auto& x = h.src;
    const auto& y = h.tgt;
    auto snd = pair.second(y); // B^Y -> A^Y -> Y
    auto sum = C::direct_sum(x, snd.d.src);
    auto f1 = sum.inl; // X -> X ⊕ A^Y, cokernel A^Y
    auto g1 = C::add(C::compose(h, sum.prl), C::compose(snd.d, sum.prr));
    auto k = C::kernel(g1);
    auto fst = pair.first(k.src); // K -> B_K -> A_K
    auto po = pushout<C>(fst.i, k);
    auto g = C::induced_from_cokernel(po.proj, C::compose(g1, po.sum.prr));
    Factorization<C> out;
    out.f = C::compose(po.from_c, f1);
    out.g = g;
    out.coker_f = C::cokernel(out.f).tgt;
    out.ker_g = C::kernel(out.g).src;
    return out;
}

template <class C>
Factorization<C> factorize(const typename C::Mor& h, const HoveyTriple<C>& t, FactorKind which) {
    return factorize_by_pair<C>(h, which == FactorKind::CofTrivFib ? t.ctf : t.tcf);
}

// ---------------------------------------------------------------------------
// Morphism classification.
// ---------------------------------------------------------------------------

template <class C>
struct MorphismClassification {
    bool cofibration = false, trivial_cofibration = false;
    bool fibration = false, trivial_fibration = false;
    bool weak_equivalence = false;
    typename C::Obj coker, ker;     // membership witnesses for the flags
    typename C::Obj weq_coker;      // cokernel of the cofibration factor
};

template <class C>
MorphismClassification<C> classify(const typename C::Mor& h, const HoveyTriple<C>& t) {
    MorphismClassification<C> out;
    out.coker = C::cokernel(h).tgt;
    out.ker = C::kernel(h).src;
    bool infl = C::mono(h), defl = C::epi(h);
    out.cofibration = infl && t.cof(out.coker);
    out.trivial_cofibration = out.cofibration && t.weq(out.coker);
    out.fibration = defl && t.fib(out.ker);
    out.trivial_fibration = out.fibration && t.weq(out.ker);
    // h = g∘f with f a cofibration and g a trivial fibration; h is a weak
    // equivalence exactly when coker f is trivial.
    auto fac = factorize<C>(h, t, FactorKind::CofTrivFib);
    out.weq_coker = fac.coker_f;
    out.weak_equivalence = t.weq(fac.coker_f);
    return out;
}

// ---------------------------------------------------------------------------
// Homotopy relations.
// ---------------------------------------------------------------------------

enum class HomotopyKind { Neither, Left, Right, Both };

// "f - g factors through a trivially cofibrant object" is decided against the
// fixed approximation A^Y -> Y of the pair (C∩W, F): the difference factors
// through some member of C∩W exactly when it lifts along that deflation.
// Dually on the left with the inflation X -> B_X of the pair (C, W∩F).
template <class C>
HomotopyKind homotopic(const typename C::Mor& f, const typename C::Mor& g,
                       const HoveyTriple<C>& t) {
    auto d = C::sub(f, g);
    auto snd = t.tcf.second(f.tgt); // A^Y -> Y with A^Y in C∩W
    bool right = hom_solve<C>(f.src, snd.d.src, nullptr, nullptr, &snd.d, &d).has_value();
    auto fst = t.ctf.first(f.src); // X -> B_X with B_X in W∩F
    bool left = hom_solve<C>(fst.i.tgt, f.tgt, &fst.i, &d, nullptr, nullptr).has_value();
    if (left && right) return HomotopyKind::Both;
    if (left) return HomotopyKind::Left;
    if (right) return HomotopyKind::Right;
    return HomotopyKind::Neither;
}

// ---------------------------------------------------------------------------
// Suspension and cofiber sequences (hereditary triples).
// ---------------------------------------------------------------------------

template <class C>
typename C::Obj suspension(const typename C::Obj& x, const HoveyTriple<C>& t) {
    return t.ctf.first(x).d.tgt; // A_X from 0 -> X -> B_X -> ΣX -> 0
}

template <class C>
struct CofiberSequence {
    typename C::Mor u; // X -> Y (input inflation)
    typename C::Mor v; // Y -> P
    typename C::Mor w; // P -> ΣX (deflation; the connecting map lives on P)
    Conflation<C> row_b; // B_X -> P -> Z
    Conflation<C> row_y; // Y -> P -> ΣX
    typename C::Obj sigma;
};

template <class C>
CofiberSequence<C> cofiber_sequence(const Conflation<C>& con, const HoveyTriple<C>& t) {
    auto ap = t.ctf.first(con.i.src); // X -> B_X -> ΣX
    auto po = pushout<C>(ap.i, con.i); // B_X <- X -> Y, legs from_b, from_c
    CofiberSequence<C> out;
    out.u = con.i;
    out.v = po.from_c;
    out.sigma = ap.d.tgt;
    // P/B_X = Y/X = Z.
    auto dz = C::induced_from_cokernel(po.proj, C::compose(con.d, po.sum.prr));
    out.row_b = Conflation<C>{po.from_b, dz};
    // P/Y = B_X/X = ΣX.
    auto ds = C::induced_from_cokernel(po.proj, C::compose(ap.d, po.sum.prl));
    out.row_y = Conflation<C>{po.from_c, ds};
    out.w = ds;
    return out;
}

// ---------------------------------------------------------------------------
// Hom-spaces in the homotopy category.
// ---------------------------------------------------------------------------

template <class C>
struct HomotopyHom {
    typename C::Obj cx, fy; // cofibrant and fibrant replacements
    std::vector<typename C::Mor> basis; // of Hom(CX, FY)
    QMat quot;                          // hom coordinates -> class coordinates
    std::size_t dim = 0;
};

template <class C>
HomotopyHom<C> homotopy_hom(const typename C::Obj& x, const typename C::Obj& y,
                            const HoveyTriple<C>& t) {
    // Cofibrant replacement: factor 0 -> X; fibrant replacement: factor Y -> 0.
    auto z = C::zero_obj(x);
    auto cfac = factorize<C>(C::zero_mor(z, x), t, FactorKind::CofTrivFib);
    auto ffac = factorize<C>(C::zero_mor(y, C::zero_obj(y)), t, FactorKind::TrivCofFib);
    HomotopyHom<C> out;
    out.cx = cfac.f.tgt;
    out.fy = ffac.f.tgt;
    out.basis = C::hom(out.cx, out.fy);
    std::size_t n = C::mor_dim(out.cx, out.fy);
    QMat b = mor_basis_matrix<C>(out.basis, n);
    // Null-homotopic subspace: maps factoring through the trivially cofibrant
    // approximation A^{FY} -> FY, i.e. the image of Hom(CX, A^{FY}) under
    // composition.
    auto snd = t.tcf.second(out.fy);
    auto through = C::hom(out.cx, snd.d.src);
    QMat img(out.basis.size(), through.size());
    for (std::size_t j = 0; j < through.size(); ++j) {
        auto sol = QMat::solve(b, C::mor_coords(C::compose(snd.d, through[j])));
        if (!sol) throw Error(ErrorKind::Internal, "homotopy_hom: image outside hom basis");
        for (std::size_t i = 0; i < out.basis.size(); ++i) img.at(i, j) = sol->at(i, 0);
    }
    out.quot = img.quotient_map();
    out.dim = out.quot.rows();
    return out;
}

// ---------------------------------------------------------------------------
// Ready-made cotorsion pairs from a finite generating set, using the
// approximation machinery of the homological engine.
// ---------------------------------------------------------------------------

template <class C>
CotorsionPair<C> cotorsion_pair_from_set(std::vector<typename C::Obj> s,
                                         std::function<bool(const typename C::Obj&)> left,
                                         std::function<bool(const typename C::Obj&)> right,
                                         std::size_t budget = 32) {
    CotorsionPair<C> pair;
    pair.left = std::move(left);
    pair.right = std::move(right);
    auto set = std::make_shared<std::vector<typename C::Obj>>(std::move(s));
    pair.first = [set, budget](const typename C::Obj& x) {
        return approximation_sequences<C>(*set, x, budget).first;
    };
    pair.second = [set, budget](const typename C::Obj& x) {
        return approximation_sequences<C>(*set, x, budget).second;
    };
    return pair;
}

} // namespace qcoh
