#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "qcoh/cpx_model.hpp"

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
    HoveyTriple<CpxCat> triple = cpx_injective_triple(indec);

    bool is_inj(const Rep& u) const {
        for (const auto& s : indec)
            if (ext1<RepCat>(s, u).dim != 0) return false;
        return true;
    }

    Complex splice() const {
        RepMor incl{s1, p0, {QMat(1, 0), QMat::identity(1)}};
        RepMor proj{p0, s0, {QMat::identity(1), QMat(0, 1)}};
        return Complex{r, 0, {s1, p0, s0}, {incl, proj}};
    }

    Rep rand_rep() const {
        Rep x;
        x.rep = r;
        x.dims = {static_cast<std::size_t>(rand_int(0, 2)),
                  static_cast<std::size_t>(rand_int(0, 2))};
        x.tr.insert({{0, 1}, rand_qmat(x.dims[1], x.dims[0])});
        return x;
    }

    Complex rand_sum_cpx() const {
        Complex c = cpx_zero(r);
        int pieces = static_cast<int>(rand_int(1, 2));
        for (int k = 0; k < pieces; ++k) {
            Rep x = rand_rep();
            long n = rand_int(-1, 1);
            Complex piece = rand_int(0, 1) ? disc(x, n) : sphere(x, n);
            c = cpx_direct_sum(c, piece).obj;
        }
        return c;
    }

    Complex rand_cpx() const {
        Complex a = rand_sum_cpx(), b = rand_sum_cpx();
        auto basis = cpx_hom(a, b);
        CpxMor f = cpx_zero_mor(a, b);
        for (const auto& e : basis) f = cpx_add(f, cpx_scale(Q(rand_int(-2, 2)), e));
        return cone(f);
    }

    CpxMor rand_mor(const Complex& a, const Complex& b) const {
        auto basis = cpx_hom(a, b);
        CpxMor f = cpx_zero_mor(a, b);
        for (const auto& e : basis) f = cpx_add(f, cpx_scale(Q(rand_int(-2, 2)), e));
        return f;
    }
};

} // namespace

TEST_CASE("approximation sequences of the injective triple") {
    Fixture fx;
    std::vector<Complex> cases{sphere(fx.s1, 0), fx.splice(), fx.rand_cpx(), fx.rand_cpx()};
    for (const auto& x : cases) {
        Conflation<CpxCat> f1 = tilde_injective_first(fx.indec, x);
        CHECK(conflation_valid<CpxCat>(f1));
        CHECK(fx.triple.ctf.right(f1.i.tgt)); // contractible complex of injectives

        Conflation<CpxCat> f2 = dg_injective_first(fx.indec, x);
        CHECK(conflation_valid<CpxCat>(f2));
        CHECK(f2.i.tgt.valid());
        CHECK(fx.triple.fib(f2.i.tgt));   // dg-injective middle
        CHECK(is_acyclic(f2.d.tgt));      // acyclic cokernel

        Conflation<CpxCat> f3 = dg_injective_second(fx.indec, x);
        CHECK(conflation_valid<CpxCat>(f3));
        CHECK(is_acyclic(f3.d.src));      // acyclic middle
        CHECK(fx.triple.fib(f3.i.src));   // dg-injective kernel
    }
}

TEST_CASE("verify_triple on a small universe of complexes") {
    Fixture fx;
    // An all-acyclic universe: the maximality probes then close up, because a
    // non-acyclic sphere would demand an orthogonality witness one degree
    // outside any finite window, while for acyclic complexes the witnesses
    // come from discs (Ext^1 against D^0(X) reduces to the module Ext into X,
    // and D^0(S_0) hits both the non-injective disc and the splice).
    std::vector<Complex> universe{cpx_zero(fx.r), disc(fx.s0, 0), disc(fx.s1, 0),
                                  disc(fx.p0, 0), fx.splice()};
    CheckReport rep = verify_triple<CpxCat>(fx.triple, universe);
    for (const auto& item : rep.items) CHECK_MESSAGE(item.pass, item.name);
}

TEST_CASE("suspension shifts cohomology down by one degree") {
    Fixture fx;
    for (const Rep& m : fx.indec) {
        Complex sx = suspension<CpxCat>(sphere(m, 0), fx.triple);
        for (long n = sx.lo; n <= sx.hi(); ++n) {
            Rep h = cpx_cohomology_at(sx, n);
            if (n == -1)
                CHECK(rep_isomorphic(h, m));
            else
                CHECK(h.is_zero());
        }
        // i.e. quasi-isomorphic to the shifted sphere shift(S^0(M), 1) = S^{-1}(M).
        Complex target = shift(sphere(m, 0), 1);
        CHECK(rep_isomorphic(cpx_cohomology_at(sx, -1), cpx_cohomology_at(target, -1)));
    }
    // Suspension of a trivial object stays trivial.
    Complex w = disc(fx.rand_rep(), 0);
    CHECK(is_acyclic(suspension<CpxCat>(w, fx.triple)));
}

TEST_CASE("classify: weak equivalence iff the cone is acyclic") {
    Fixture fx;
    int checked = 0;
    for (int t = 0; t < 20; ++t) {
        Complex a = fx.rand_cpx(), b = fx.rand_cpx();
        CpxMor f = fx.rand_mor(a, b);
        MorphismClassification<CpxCat> cls = classify<CpxCat>(f, fx.triple);
        CHECK(cls.weak_equivalence == is_acyclic(cone(f)));
        ++checked;
        // Every morphism is a cofibration candidate exactly when it is mono.
        CHECK(cls.cofibration == f.degreewise_mono());
    }
    CHECK(checked == 20);
    // Identity is a trivial cofibration and a trivial fibration.
    Complex x = fx.splice();
    MorphismClassification<CpxCat> cls = classify<CpxCat>(cpx_id(x), fx.triple);
    CHECK(cls.weak_equivalence);
    CHECK(cls.trivial_cofibration);
}

TEST_CASE("factorizations land in the advertised classes") {
    Fixture fx;
    for (int t = 0; t < 6; ++t) {
        Complex a = fx.rand_cpx(), b = fx.rand_cpx();
        CpxMor h = fx.rand_mor(a, b);
        Factorization<CpxCat> cf = factorize<CpxCat>(h, fx.triple, FactorKind::CofTrivFib);
        CHECK(cf.f.degreewise_mono());
        CHECK(cf.g.degreewise_epi());
        CHECK(cpx_sub(cpx_compose(cf.g, cf.f), h).is_zero());
        CHECK(fx.triple.ctf.right(cf.ker_g));
        Factorization<CpxCat> tf = factorize<CpxCat>(h, fx.triple, FactorKind::TrivCofFib);
        CHECK(cpx_sub(cpx_compose(tf.g, tf.f), h).is_zero());
        CHECK(is_acyclic(tf.coker_f));
        CHECK(fx.triple.fib(tf.ker_g));
    }
}

TEST_CASE("homotopy relation") {
    Fixture fx;
    // The identity of a contractible complex is null-homotopic.
    Complex d = disc(fx.p0, 0);
    CHECK(homotopic<CpxCat>(cpx_id(d), cpx_zero_mor(d, d), fx.triple) == HomotopyKind::Both);
    // The identity of a sphere is not.
    Complex s = sphere(fx.s0, 0);
    CHECK(homotopic<CpxCat>(cpx_id(s), cpx_zero_mor(s, s), fx.triple) == HomotopyKind::Neither);
    // Classical chain homotopies are detected: on maps splice -> disc the
    // whole hom space is null-homotopic since the disc is contractible.
    Complex sp = fx.splice();
    for (const auto& f : cpx_hom(sp, disc(fx.p0, 0)))
        CHECK(homotopic<CpxCat>(f, cpx_zero_mor(sp, disc(fx.p0, 0)), fx.triple) ==
              HomotopyKind::Both);
    // Reflexivity and symmetry on random parallel pairs.
    for (int t = 0; t < 4; ++t) {
        Complex a = fx.rand_cpx(), b = fx.rand_cpx();
        CpxMor f = fx.rand_mor(a, b), g = fx.rand_mor(a, b);
        CHECK(homotopic<CpxCat>(f, f, fx.triple) == HomotopyKind::Both);
        CHECK(homotopic<CpxCat>(f, g, fx.triple) == homotopic<CpxCat>(g, f, fx.triple));
    }
}

TEST_CASE("homotopy category hom spaces: derived-category dimensions") {
    Fixture fx;
    // Hom in the homotopy category between spheres in the same degree is the
    // module-level hom modulo maps factoring through injectives-resolution
    // pieces; between S^0 and the suspended sphere it is ext1.
    HomotopyHom<CpxCat> h1 =
        homotopy_hom<CpxCat>(sphere(fx.s0, 0), shift(sphere(fx.s1, 0), 1), fx.triple);
    CHECK(h1.dim == ext1<RepCat>(fx.s0, fx.s1).dim);
    CHECK(h1.dim == 1);
    // With the sphere placed one degree up instead, the group vanishes.
    HomotopyHom<CpxCat> h2 =
        homotopy_hom<CpxCat>(sphere(fx.s0, 0), sphere(fx.s1, 1), fx.triple);
    CHECK(h2.dim == 0);
    // Identity class survives.
    HomotopyHom<CpxCat> h3 = homotopy_hom<CpxCat>(sphere(fx.s0, 0), sphere(fx.s0, 0), fx.triple);
    CHECK(h3.dim == 1);
    // Everything mapping into a contractible complex of injectives dies.
    HomotopyHom<CpxCat> h4 = homotopy_hom<CpxCat>(fx.splice(), disc(fx.s0, 0), fx.triple);
    CHECK(h4.dim == 0);
    // Sampled agreement with module-level ext via spheres: Hom_Ho(S^0(X), S^0(Y))
    // has the dimension of Hom(X, Y).
    for (const Rep& x : fx.indec)
        for (const Rep& y : fx.indec) {
            HomotopyHom<CpxCat> h =
                homotopy_hom<CpxCat>(sphere(x, 0), sphere(y, 0), fx.triple);
            CHECK(h.dim == rep_hom(x, y).size());
            HomotopyHom<CpxCat> he =
                homotopy_hom<CpxCat>(sphere(x, 0), shift(sphere(y, 0), 1), fx.triple);
            CHECK(he.dim == ext1<RepCat>(x, y).dim);
        }
}

TEST_CASE("cofiber sequences in the injective complex model") {
    Fixture fx;
    Complex ss = sphere(fx.s1, 1);
    Complex sp = fx.splice();
    RepMor incl{fx.s1, fx.p0, {QMat(1, 0), QMat::identity(1)}};
    CpxMor u{ss, sp, {incl}};
    Conflation<CpxCat> con{u, cpx_cokernel(u)};
    REQUIRE(conflation_valid<CpxCat>(con));
    CofiberSequence<CpxCat> cs = cofiber_sequence<CpxCat>(con, fx.triple);
    CHECK(conflation_valid<CpxCat>(cs.row_b));
    CHECK(conflation_valid<CpxCat>(cs.row_y));
    CHECK(cpx_sub(cpx_compose(cs.w, cs.v), cpx_compose(cs.w, cs.v)).is_zero());
    // The suspension slot is quasi-isomorphic to the shifted source.
    Complex sx = cs.w.tgt;
    Complex expect = shift(ss, 1);
    for (long n = std::min(sx.lo, expect.lo); n <= std::max(sx.hi(), expect.hi()); ++n)
        CHECK(cpx_cohomology_at(sx, n).dims == cpx_cohomology_at(expect, n).dims);
}
