#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "qcoh/model.hpp"

using namespace qcoh;
using namespace qcoh::testing;

namespace {

Rep simple_at(RingRepPtr r, std::size_t i) {
    Rep x;
    x.rep = r;
    x.dims.assign(r->poset.size(), 0);
    x.dims[i] = 1;
    for (auto [a, b] : r->poset.strict_pairs()) x.tr.insert({{a, b}, QMat(x.dims[b], x.dims[a])});
    return x;
}

struct Fixture {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep s0 = simple_at(r, 0), s1 = simple_at(r, 1);
    Rep p0 = rep_projective(r, 0);
    std::vector<Rep> indec{s0, s1, p0};

    bool is_proj(const Rep& u) const {
        for (const auto& s : indec)
            if (ext1<RepCat>(u, s).dim != 0) return false;
        return true;
    }
    bool is_inj(const Rep& u) const {
        for (const auto& s : indec)
            if (ext1<RepCat>(s, u).dim != 0) return false;
        return true;
    }

    // (Proj, all): B_X = X itself, A_X = 0; second sequence = presentation.
    CotorsionPair<RepCat> proj_pair() const {
        CotorsionPair<RepCat> p;
        p.left = [this](const Rep& u) { return is_proj(u); };
        p.right = [](const Rep&) { return true; };
        p.first = [](const Rep& x) {
            return Conflation<RepCat>{rep_id(x), rep_zero_mor(x, rep_zero(x.rep))};
        };
        p.second = [](const Rep& x) {
            auto pres = rep_presentation(x);
            return Conflation<RepCat>{pres.ker_incl, pres.epi};
        };
        return p;
    }

    // (all, Inj): approximations from the engine against every indecomposable.
    CotorsionPair<RepCat> inj_pair() const {
        return cotorsion_pair_from_set<RepCat>(
            indec, [](const Rep&) { return true; },
            [this](const Rep& u) { return is_inj(u); });
    }

    HoveyTriple<RepCat> proj_triple() const {
        HoveyTriple<RepCat> t;
        t.cof = [this](const Rep& u) { return is_proj(u); };
        t.weq = [](const Rep&) { return true; };
        t.fib = [](const Rep&) { return true; };
        t.ctf = proj_pair();
        t.tcf = proj_pair();
        return t;
    }

    HoveyTriple<RepCat> inj_triple() const {
        HoveyTriple<RepCat> t;
        t.cof = [](const Rep&) { return true; };
        t.weq = [](const Rep&) { return true; };
        t.fib = [this](const Rep& u) { return is_inj(u); };
        t.ctf = inj_pair();
        t.tcf = inj_pair();
        return t;
    }

    std::function<std::string(const Rep&)> namer() const {
        return [](const Rep& u) {
            std::string s = "dims(";
            for (auto d : u.dims) s += std::to_string(d) + ",";
            return s + ")";
        };
    }
};

} // namespace

TEST_CASE("retract detection") {
    Fixture fx;
    Rep ss = rep_direct_sum(fx.s0, fx.s0).obj;
    CHECK(is_retract<RepCat>(fx.s0, ss));
    CHECK(is_retract<RepCat>(fx.s1, fx.p0) == false); // S1 sits inside P0 non-split
    CHECK(is_retract<RepCat>(fx.s0, fx.p0) == false);
    CHECK(is_retract<RepCat>(fx.p0, rep_direct_sum(fx.p0, fx.s1).obj));
    CHECK(is_retract<RepCat>(rep_zero(fx.r), fx.s0));
}

TEST_CASE("verify_triple: passing triples, empty universe, size cap") {
    Fixture fx;
    std::vector<Rep> universe{rep_zero(fx.r), fx.s0, fx.s1, fx.p0,
                              rep_direct_sum(fx.p0, fx.s1).obj};

    auto rep1 = verify_triple<RepCat>(fx.proj_triple(), universe, fx.namer());
    for (const auto& it : rep1.items) {
        INFO(it.name, ": ", it.witness);
        CHECK(it.pass);
    }
    CHECK(rep1.ok());

    auto rep2 = verify_triple<RepCat>(fx.inj_triple(), universe, fx.namer());
    CHECK(rep2.ok());

    auto rep3 = verify_triple<RepCat>(fx.proj_triple(), {});
    CHECK(rep3.ok());
    CHECK(rep3.items.size() == 1); // the vacuous note

    CHECK_THROWS_AS(verify_triple<RepCat>(fx.proj_triple(), universe, fx.namer(), 2), Error);
}

TEST_CASE("verify_triple: even-dimension trivial class fails") {
    Fixture fx;
    HoveyTriple<RepCat> t = fx.inj_triple();
    t.weq = [](const Rep& u) { return u.qdim() % 2 == 0; };
    std::vector<Rep> universe{rep_zero(fx.r), fx.s0, fx.s1, fx.p0,
                              rep_direct_sum(fx.s0, fx.s0).obj};
    auto rep = verify_triple<RepCat>(t, universe, fx.namer());
    CHECK(!rep.ok());
    // S0 is a retract of S0 ⊕ S0 (trivial) but is not itself trivial.
    bool retract_failed = false;
    for (const auto& it : rep.items)
        if (it.name.find("retract") != std::string::npos && !it.pass) retract_failed = true;
    CHECK(retract_failed);
}

TEST_CASE("classification of basic morphisms") {
    Fixture fx;
    auto pt = fx.proj_triple();
    auto it = fx.inj_triple();

    auto cid = classify<RepCat>(rep_id(fx.p0), pt);
    CHECK(cid.cofibration);
    CHECK(cid.trivial_cofibration);
    CHECK(cid.fibration);
    CHECK(cid.trivial_fibration);
    CHECK(cid.weak_equivalence);

    // The inclusion S1 -> P0 has cokernel S0.
    RepMor inc = rep_hom(fx.s1, fx.p0)[0];
    auto c1 = classify<RepCat>(inc, pt);
    CHECK(!c1.cofibration); // S0 is not projective
    CHECK(!c1.fibration);   // not epi
    CHECK(c1.weak_equivalence);
    auto c2 = classify<RepCat>(inc, it);
    CHECK(c2.cofibration);
    CHECK(c2.trivial_cofibration);

    // The deflation P0 -> S0 has kernel S1, which is not injective.
    RepMor q = rep_cokernel(inc);
    auto c3 = classify<RepCat>(q, it);
    CHECK(!c3.fibration);
    CHECK(c3.weak_equivalence);
    auto c4 = classify<RepCat>(q, pt);
    CHECK(c4.fibration);
    CHECK(c4.trivial_fibration);
}

TEST_CASE("classification invariants on random morphisms") {
    Fixture fx;
    auto pt = fx.proj_triple();
    int done = 0;
    while (done < 20) {
        Rep a = rand_rep(fx.r), b = rand_rep(fx.r);
        auto basis = rep_hom(a, b);
        RepMor h = rep_zero_mor(a, b);
        for (const auto& m : basis) h = rep_add(h, rep_scale(Q(rand_int(-2, 2)), m));
        auto c = classify<RepCat>(h, pt);
        if (c.trivial_cofibration) CHECK((c.cofibration && c.weak_equivalence));
        if (c.trivial_fibration) CHECK((c.fibration && c.weak_equivalence));
        ++done;
    }
}

TEST_CASE("factorizations land in their classes and compose back") {
    Fixture fx;
    for (const auto& t : {fx.proj_triple(), fx.inj_triple()}) {
        int done = 0;
        while (done < 15) {
            Rep a = rand_rep(fx.r), b = rand_rep(fx.r);
            RepMor h = rep_zero_mor(a, b);
            for (const auto& m : rep_hom(a, b)) h = rep_add(h, rep_scale(Q(rand_int(-2, 2)), m));
            for (auto which : {FactorKind::CofTrivFib, FactorKind::TrivCofFib}) {
                auto fac = factorize<RepCat>(h, t, which);
                CHECK(RepCat::mono(fac.f));
                CHECK(RepCat::epi(fac.g));
                CHECK(rep_mor_coords(rep_compose(fac.g, fac.f)) == rep_mor_coords(h));
                const auto& pair = which == FactorKind::CofTrivFib ? t.ctf : t.tcf;
                CHECK(pair.left(fac.coker_f));
                CHECK(pair.right(fac.ker_g));
                // Lifting property of the output against its own opposite leg.
                auto filler = lifting<RepCat>(fac.f, fac.g, fac.f, fac.g);
                CHECK(filler);
            }
            ++done;
        }
    }
}

TEST_CASE("factorization outputs lift against sampled opposite-class maps") {
    Fixture fx;
    auto t = fx.proj_triple();
    // f from factorizing S0 -> 0 (the spec's worked shape): cofibration into
    // the graph followed by an approximation pushout.
    RepMor h = rep_zero_mor(fx.s0, rep_zero(fx.r));
    auto fac = factorize<RepCat>(h, t, FactorKind::CofTrivFib);
    CHECK(fx.is_proj(fac.coker_f));
    // g': any split deflation is a trivial fibration here.
    int done = 0;
    while (done < 10) {
        Rep k = rand_rep(fx.r), y = rand_rep(fx.r);
        auto sum = rep_direct_sum(k, y);
        RepMor gp = sum.prr;
        // Build a commuting square via a random diagonal and check it refills.
        RepMor d0 = rep_zero_mor(fac.f.tgt, sum.obj);
        for (const auto& m : rep_hom(fac.f.tgt, sum.obj))
            d0 = rep_add(d0, rep_scale(Q(rand_int(-2, 2)), m));
        auto u = rep_compose(d0, fac.f);
        auto v = rep_compose(gp, d0);
        auto filler = lifting<RepCat>(fac.f, gp, u, v);
        CHECK(filler);
        ++done;
    }
}

TEST_CASE("homotopy relations") {
    Fixture fx;
    auto pt = fx.proj_triple();

    // f = g: both homotopies hold.
    RepMor inc = rep_hom(fx.s1, fx.p0)[0];
    CHECK(homotopic<RepCat>(inc, inc, pt) == HomotopyKind::Both);

    // Cofibrant source (projective): left and right agree and hold for any pair.
    for (const auto& f : rep_hom(fx.p0, fx.p0))
        CHECK(homotopic<RepCat>(f, rep_zero_mor(fx.p0, fx.p0), pt) == HomotopyKind::Both);

    // id on S0 does not factor through a projective: not right homotopic to 0,
    // but left homotopy holds via the split first sequence.
    auto hk = homotopic<RepCat>(rep_id(fx.s0), rep_zero_mor(fx.s0, fx.s0), pt);
    CHECK(hk == HomotopyKind::Left);

    // Homotopy is an equivalence relation on maps from a cofibrant object.
    auto maps = rep_hom(fx.p0, fx.p0);
    for (const auto& f : maps)
        for (const auto& g : maps) {
            auto ab = homotopic<RepCat>(f, g, pt);
            auto ba = homotopic<RepCat>(g, f, pt);
            CHECK(ab == ba);
        }
}

TEST_CASE("suspension in the injective model") {
    Fixture fx;
    auto it = fx.inj_triple();
    // Sigma S1 = S0 via 0 -> S1 -> P0 -> S0 -> 0.
    CHECK(rep_isomorphic(suspension<RepCat>(fx.s1, it), fx.s0));
    // Injective objects suspend to zero.
    CHECK(RepCat::is_zero_obj(suspension<RepCat>(fx.p0, it)));
    CHECK(RepCat::is_zero_obj(suspension<RepCat>(fx.s0, it)));
}

TEST_CASE("cofiber sequences") {
    Fixture fx;
    auto it = fx.inj_triple();
    auto e = ext1<RepCat>(fx.s0, fx.s1);
    auto con = ext1_witnesses<RepCat>(e)[0]; // S1 -> P0 -> S0
    auto cs = cofiber_sequence<RepCat>(con, it);
    CHECK(conflation_valid<RepCat>(cs.row_b));
    CHECK(conflation_valid<RepCat>(cs.row_y));
    CHECK(rep_isomorphic(cs.sigma, fx.s0));
    CHECK(rep_isomorphic(cs.row_b.d.tgt, con.d.tgt));
    // The pushout square commutes: v∘u = row_b.i ∘ (X -> B_X) on X.
    auto lhs = rep_compose(cs.v, cs.u);
    auto rhs = rep_compose(cs.row_b.i, it.ctf.first(con.i.src).i);
    CHECK(rep_mor_coords(lhs) == rep_mor_coords(rhs));

    // Degenerate: u = identity gives P weakly equivalent to B_X.
    Conflation<RepCat> idcon{rep_id(fx.s1), rep_zero_mor(fx.s1, rep_zero(fx.r))};
    auto cs2 = cofiber_sequence<RepCat>(idcon, it);
    CHECK(conflation_valid<RepCat>(cs2.row_y));
    CHECK(rep_isomorphic(cs2.row_y.i.tgt, it.ctf.first(fx.s1).i.tgt));
}

TEST_CASE("homotopy-category hom spaces collapse when all objects are trivial") {
    Fixture fx;
    // With W = everything the homotopy category is trivial: every hom space of
    // classes vanishes, in both models.
    for (const auto& t : {fx.proj_triple(), fx.inj_triple()})
        for (const auto& x : fx.indec)
            for (const auto& y : fx.indec) {
                auto hh = homotopy_hom<RepCat>(x, y, t);
                CHECK(hh.dim == 0);
            }
}

TEST_CASE("objects trivial in all three classes are ext-orthogonal to the core") {
    Fixture fx;
    auto pt = fx.proj_triple();
    // C∩F∩W here is the projectives; inside C∩F (= projectives) they are both
    // ext1-projective and ext1-injective.
    for (const auto& a : fx.indec)
        for (const auto& b : fx.indec) {
            if (!fx.is_proj(a) || !fx.is_proj(b)) continue;
            CHECK(ext1<RepCat>(a, b).dim == 0);
        }
}
