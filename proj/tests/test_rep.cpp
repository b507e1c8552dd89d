#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "qcoh/rep.hpp"

using namespace qcoh;
using namespace qcoh::testing;

namespace {

// S_i on a chain: Q at vertex i, zero elsewhere, zero transitions.
Rep simple_at(RingRepPtr r, std::size_t i) {
    Rep x;
    x.rep = r;
    x.dims.assign(r->poset.size(), 0);
    x.dims[i] = 1;
    for (auto [a, b] : r->poset.strict_pairs()) x.tr.insert({{a, b}, QMat(x.dims[b], x.dims[a])});
    return x;
}

} // namespace

TEST_CASE("projectives, simples and validity") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(3));
    for (std::size_t i = 0; i < 3; ++i) {
        Rep p = rep_projective(r, i);
        CHECK(p.valid());
        CHECK(p.qdim() == 3 - i);
        Rep s = simple_at(r, i);
        CHECK(s.valid());
        CHECK(s.qdim() == 1);
    }
    CHECK(rep_zero(r).is_zero());
}

TEST_CASE("hom spaces between projectives and simples on a chain") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep p0 = rep_projective(r, 0), p1 = rep_projective(r, 1);
    Rep s0 = simple_at(r, 0), s1 = simple_at(r, 1);

    CHECK(rep_hom(p0, p0).size() == 1);
    CHECK(rep_hom(p1, p0).size() == 1);
    CHECK(rep_hom(p0, p1).empty());
    CHECK(rep_hom(p0, s0).size() == 1); // Hom(P_i, M) = M(i)
    CHECK(rep_hom(p0, s1).empty());     // S_1(0) = 0
    CHECK(rep_hom(p1, s1).size() == 1);
    CHECK(rep_hom(p1, s0).empty());
    CHECK(rep_hom(s0, s1).empty());
    CHECK(rep_hom(s1, s0).empty());

    for (const auto& h : rep_hom(p0, p0)) CHECK(h.valid());
}

TEST_CASE("kernel and cokernel are exact on random morphisms") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(3));
    int checked = 0;
    while (checked < 30) {
        Rep a = rand_rep(r), b = rand_rep(r);
        auto basis = rep_hom(a, b);
        if (basis.empty()) continue;
        RepMor f = rep_zero_mor(a, b);
        for (const auto& h : basis) f = rep_add(f, rep_scale(Q(rand_int(-2, 2)), h));
        REQUIRE(f.valid());

        RepMor k = rep_kernel(f);
        CHECK(k.valid());
        CHECK(k.vertexwise_mono());
        CHECK(rep_compose(f, k).is_zero());
        RepMor c = rep_cokernel(f);
        CHECK(c.valid());
        CHECK(c.vertexwise_epi());
        CHECK(rep_compose(c, f).is_zero());
        // Rank-nullity at every vertex.
        for (std::size_t i = 0; i < a.nv(); ++i) {
            CHECK(k.src.dims[i] + f.f[i].rank() == a.dims[i]);
            CHECK(c.tgt.dims[i] + f.f[i].rank() == b.dims[i]);
        }
        ++checked;
    }
}

TEST_CASE("direct sums with their structural maps") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep a = rep_projective(r, 0), b = simple_at(r, 1);
    RepSum s = rep_direct_sum(a, b);
    CHECK(s.obj.valid());
    CHECK(s.obj.qdim() == a.qdim() + b.qdim());
    CHECK(s.inl.valid());
    CHECK(s.inr.valid());
    CHECK(s.prl.valid());
    CHECK(s.prr.valid());
    // pr o in = id, complementary compositions vanish.
    for (std::size_t i = 0; i < a.nv(); ++i) {
        CHECK(rep_compose(s.prl, s.inl).f[i] == QMat::identity(a.dims[i]));
        CHECK(rep_compose(s.prr, s.inr).f[i] == QMat::identity(b.dims[i]));
    }
    CHECK(rep_compose(s.prl, s.inr).is_zero());
    CHECK(rep_compose(s.prr, s.inl).is_zero());
}

TEST_CASE("pushouts and pullbacks") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep p0 = rep_projective(r, 0), p1 = rep_projective(r, 1), s0 = simple_at(r, 0);

    // Pushout of s0 <- 0 -> s0 is the direct sum.
    Rep z = rep_zero(r);
    RepPushout po = rep_pushout(rep_zero_mor(z, s0), rep_zero_mor(z, s0));
    CHECK(po.obj.qdim() == 2);
    CHECK(po.from_b.valid());
    CHECK(po.from_c.valid());

    // Pushout along the inclusion P_1 -> P_0 of the quotient map P_1 -> 0.
    auto inc_basis = rep_hom(p1, p0);
    REQUIRE(inc_basis.size() == 1);
    RepMor inc = inc_basis[0];
    RepPushout po2 = rep_pushout(inc, rep_zero_mor(p1, z));
    CHECK(rep_isomorphic(po2.obj, s0)); // P_0 / P_1 = S_0
    // Universal square commutes.
    CHECK(rep_sub(rep_compose(po2.from_b, inc), rep_compose(po2.from_c, rep_zero_mor(p1, z)))
              .is_zero());

    // Pullback of P_0 -> S_0 <- S_0 (id) recovers P_0.
    RepMor q = rep_cokernel(inc); // P_0 ->> S_0
    RepPullback pb = rep_pullback(q, rep_id(q.tgt));
    CHECK(rep_isomorphic(pb.obj, p0));
    CHECK(rep_sub(rep_compose(q, pb.to_b), rep_compose(rep_id(q.tgt), pb.to_c)).is_zero());
}

TEST_CASE("projective presentations cover and resolve") {
    RingRepPtr r3 = constant_field_rep(FinitePoset::chain(3));
    for (int t = 0; t < 20; ++t) {
        Rep x = rand_rep(r3);
        RepPresentation pres = rep_presentation(x);
        CHECK(pres.p.valid());
        CHECK(pres.epi.valid());
        CHECK(pres.epi.vertexwise_epi());
        CHECK(pres.ker_incl.valid());
        CHECK(rep_compose(pres.epi, pres.ker_incl).is_zero());
        CHECK(pres.p.qdim() == x.qdim() + pres.ker_incl.src.qdim());
    }
    // The presentation of a projective is split: P covers itself.
    Rep p1 = rep_projective(r3, 1);
    RepPresentation pp = rep_presentation(p1);
    CHECK(pp.epi.vertexwise_epi());
}

TEST_CASE("isomorphism testing") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep p0 = rep_projective(r, 0), s0 = simple_at(r, 0), s1 = simple_at(r, 1);
    CHECK(rep_isomorphic(p0, p0));
    CHECK(!rep_isomorphic(p0, s0));
    // Same dimension vector, different structure: P_0 vs S_0 + S_1.
    Rep sum = rep_direct_sum(s0, s1).obj;
    CHECK(sum.dims == p0.dims);
    CHECK(!rep_isomorphic(p0, sum));
}

TEST_CASE("round trip through the diagram-module form") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(3));
    for (int t = 0; t < 10; ++t) {
        Rep x = rand_rep(r);
        DiagModule d = rep_to_diag(x);
        CHECK(validate(d).empty());
        Rep back = diag_to_rep(d);
        CHECK(back.valid());
        CHECK(rep_isomorphic(x, back));
        CHECK(x.dims == back.dims);
    }
    // hom_space on the diagram side matches rep_hom.
    Rep a = rand_rep(r), b = rand_rep(r);
    CHECK(hom_space(rep_to_diag(a), rep_to_diag(b)).size() == rep_hom(a, b).size());
}
