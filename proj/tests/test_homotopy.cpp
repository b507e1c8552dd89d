#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "qcoh/homotopy.hpp"

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

// Euler form of the linearly oriented A_n quiver (chain poset):
// <d, e> = sum d_i e_i - sum d_i e_{i+1}.
long euler_form(const std::vector<std::size_t>& d, const std::vector<std::size_t>& e) {
    long v = 0;
    for (std::size_t i = 0; i < d.size(); ++i) v += static_cast<long>(d[i] * e[i]);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) v -= static_cast<long>(d[i] * e[i + 1]);
    return v;
}

} // namespace

TEST_CASE("ext1 on the chain 0 < 1") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep s0 = simple_at(r, 0), s1 = simple_at(r, 1), p0 = rep_projective(r, 0);

    auto e01 = ext1<RepCat>(s0, s1);
    CHECK(e01.dim == 1);
    auto wit = ext1_witnesses<RepCat>(e01);
    REQUIRE(wit.size() == 1);
    CHECK(conflation_valid<RepCat>(wit[0]));
    // The witness middle object is P_0.
    CHECK(rep_isomorphic(wit[0].i.tgt, p0));

    CHECK(ext1<RepCat>(s1, s0).dim == 0);
    CHECK(ext1<RepCat>(p0, s0).dim == 0);
    CHECK(ext1<RepCat>(p0, s1).dim == 0);

    // Recovering coordinates from a materialized witness.
    QMat cls = ext1_class<RepCat>(e01, wit[0]);
    REQUIRE(cls.rows() == 1);
    CHECK(cls.at(0, 0) == 1);
    // The split extension has class zero.
    auto split = split_conflation<RepCat>(s1, s0);
    CHECK(ext1_class<RepCat>(e01, split).is_zero());
}

TEST_CASE("higher ext vanishes on chains; additivity in the first slot") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(3));
    for (int t = 0; t < 15; ++t) {
        Rep x = rand_rep(r), y = rand_rep(r);
        CHECK(extn<RepCat>(x, y, 2) == 0);
        CHECK(extn<RepCat>(x, y, 1) == ext1<RepCat>(x, y).dim);
        Rep x2 = rand_rep(r);
        auto sum = rep_direct_sum(x, x2);
        CHECK(ext1<RepCat>(sum.obj, y).dim == ext1<RepCat>(x, y).dim + ext1<RepCat>(x2, y).dim);
    }
}

TEST_CASE("Euler form oracle on chains") {
    for (std::size_t len = 1; len <= 3; ++len) {
        RingRepPtr r = constant_field_rep(FinitePoset::chain(len));
        for (int t = 0; t < 20; ++t) {
            Rep x = rand_rep(r), y = rand_rep(r);
            long lhs = static_cast<long>(rep_hom(x, y).size()) -
                       static_cast<long>(ext1<RepCat>(x, y).dim);
            CHECK(lhs == euler_form(x.dims, y.dims));
        }
    }
}

TEST_CASE("lifting: squares, fillers and obstructions") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep s0 = simple_at(r, 0), s1 = simple_at(r, 1), z = rep_zero(r);

    auto e01 = ext1<RepCat>(s0, s1);
    auto wit = ext1_witnesses<RepCat>(e01)[0]; // S1 -> P0 -> S0

    // f: 0 -> S0, g = deflation P0 -> S0, bottom = identity: no filler
    // (a filler would be a section of the nonsplit extension).
    RepMor f = rep_zero_mor(z, s0);
    RepMor u = rep_zero_mor(z, wit.d.src);
    RepMor v = rep_id(s0);
    auto h = lifting<RepCat>(f, wit.d, u, v);
    CHECK(!h);

    // The same square against a split deflation has a filler.
    auto sp = split_conflation<RepCat>(s1, s0);
    auto h2 = lifting<RepCat>(f, sp.d, rep_zero_mor(z, sp.d.src), v);
    REQUIRE(h2);
    CHECK(rep_mor_coords(rep_compose(sp.d, *h2)) == rep_mor_coords(v));

    // Non-commuting squares are rejected.
    RepMor idq = rep_id(s0);
    CHECK_THROWS_AS(lifting<RepCat>(idq, wit.d, rep_zero_mor(s0, wit.d.src), rep_id(s0)),
                    Error);
}

TEST_CASE("zero-ext implies lifting, randomized") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(3));
    int done = 0;
    while (done < 50) {
        // Random inflation f: A -> B and deflation g: X -> Y.
        Rep a = rand_rep(r), kx = rand_rep(r);
        auto sa = rep_direct_sum(a, rand_rep(r));
        RepMor f = sa.inl; // split inflation
        auto sx = rep_direct_sum(kx, rand_rep(r));
        RepMor g = sx.prr; // split deflation, kernel kx
        Rep cokf = sa.prr.tgt;
        if (ext1<RepCat>(cokf, kx).dim != 0) continue;
        // A random commuting square: u arbitrary, v := induced (g∘u extended).
        auto homau = rep_hom(a, sx.obj);
        RepMor u = rep_zero_mor(a, sx.obj);
        for (const auto& hh : homau) u = rep_add(u, rep_scale(Q(rand_int(-2, 2)), hh));
        // v: B -> Y with v∘f = g∘u; build on the split pieces: v = g∘u on A, 0 on A'.
        RepMor v = rep_compose(rep_compose(g, u), sa.prl);
        auto fill = lifting<RepCat>(f, g, u, v);
        CHECK(fill);
        if (fill) {
            CHECK(rep_mor_coords(rep_compose(*fill, f)) == rep_mor_coords(u));
            CHECK(rep_mor_coords(rep_compose(g, *fill)) == rep_mor_coords(v));
        }
        ++done;
    }
}

TEST_CASE("generating inflations") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep s0 = simple_at(r, 0);
    Rep g = RepCat::generator(s0); // P0 + P1
    auto gens = generating_inflations<RepCat>(g, s0);
    REQUIRE(!gens.members.empty());
    for (const auto& m : gens.members) {
        CHECK(conflation_valid<RepCat>(m));
        CHECK(RepCat::epi(m.d));
    }
    // Hom(G, S0) is 1-dimensional, so there is exactly one member; its kernel
    // has the dimension vector of P1 plus the P1-summand of G.
    CHECK(gens.members.size() == 1);

    auto gens0 = generating_inflations<RepCat>(g, rep_zero(r));
    REQUIRE(gens0.members.size() == 1);
    CHECK(RepCat::is_zero_obj(gens0.members[0].i.src));
}

TEST_CASE("small object argument: S0 instance in one step with middle P0") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep s0 = simple_at(r, 0), z = rep_zero(r);
    Rep p0 = rep_projective(r, 0), p1 = rep_projective(r, 1);

    // Generators 0 -> P0 and 0 -> P1.
    GeneratingInflations<RepCat> gens;
    gens.members.push_back({rep_zero_mor(z, p0), rep_cokernel(rep_zero_mor(z, p0))});
    gens.members.push_back({rep_zero_mor(z, p1), rep_cokernel(rep_zero_mor(z, p1))});

    RepMor h = rep_zero_mor(z, s0);
    auto res = small_object_factorize<RepCat>(gens, h);
    CHECK(res.record.steps.size() == 1);
    CHECK(rep_isomorphic(res.g.src, p0));
    CHECK(has_rlp<RepCat>(gens, res.g));
    // Replay reproduces the composite.
    auto replay = replay_record<RepCat>(gens, res.record);
    CHECK(rep_mor_coords(replay) == rep_mor_coords(res.record.composite));
    // h = g ∘ composite.
    CHECK(rep_mor_coords(rep_compose(res.g, res.record.composite)) == rep_mor_coords(h));

    // A morphism that already has RLP factors trivially.
    auto res2 = small_object_factorize<RepCat>(gens, rep_id(p0));
    CHECK(res2.record.steps.empty());
}

TEST_CASE("approximation sequences against the full indecomposable set") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep s0 = simple_at(r, 0), s1 = simple_at(r, 1), p0 = rep_projective(r, 0);
    std::vector<Rep> S{s0, s1, p0};

    for (const Rep& x : {s1, s0, p0}) {
        auto ap = approximation_sequences<RepCat>(S, x);
        CHECK(conflation_valid<RepCat>(ap.first));
        CHECK(conflation_valid<RepCat>(ap.second));
        CHECK(filtration_valid<RepCat>(ap.first_filtration));
        CHECK(rep_isomorphic(ap.first_filtration.top(), ap.first.d.tgt));
        // ext1(s, B_X) = 0 for every s.
        for (const auto& s : S) CHECK(ext1<RepCat>(s, ap.first.i.tgt).dim == 0);
        // Composites line up with X.
        CHECK(ap.first.i.src.dims == x.dims);
        CHECK(ap.second.d.tgt.dims == x.dims);
    }

    // X = S1: B_X must be injective; here that forces a P0 middle.
    auto ap = approximation_sequences<RepCat>(S, s1);
    CHECK(ext1<RepCat>(s0, ap.first.i.tgt).dim == 0);
    CHECK(ext1<RepCat>(s1, ap.first.i.tgt).dim == 0);
}

TEST_CASE("cotorsion pair reports on the chain universe") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep s0 = simple_at(r, 0), s1 = simple_at(r, 1), p0 = rep_projective(r, 0);
    std::vector<Rep> universe{s0, s1, p0};
    std::vector<Rep> projectives{s1, p0}; // P1 = S1 and P0
    std::vector<Rep> injectives{s0, p0};  // I1 = P0, I0 = S0
    std::vector<Rep> all = universe;

    CHECK(is_cotorsion_pair<RepCat>(projectives, all, universe).ok());
    CHECK(is_cotorsion_pair<RepCat>(all, injectives, universe).ok());
    CHECK(!is_cotorsion_pair<RepCat>(all, all, universe).ok());
    CHECK(is_hereditary<RepCat>(projectives, all).ok());
    CHECK(is_hereditary<RepCat>(all, injectives).ok());
}

TEST_CASE("eklof check on explicit filtrations") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep s0 = simple_at(r, 0), s1 = simple_at(r, 1), p0 = rep_projective(r, 0);

    // P0 filtered by S1 then S0: 0 -> S1 -> P0.
    auto e01 = ext1<RepCat>(s0, s1);
    auto wit = ext1_witnesses<RepCat>(e01)[0];
    Filtration<RepCat> filt;
    filt.bottom = rep_zero(r);
    filt.steps.push_back({rep_zero_mor(filt.bottom, wit.i.src), s1});
    filt.steps.push_back({wit.i, s0});
    REQUIRE(filtration_valid<RepCat>(filt));

    CHECK(eklof_check<RepCat>({p0}, filt));
    CHECK(eklof_check<RepCat>({}, filt));
    // Against B = {S1}: the factor S0 has ext1(S0, S1) != 0.
    CHECK_THROWS_AS(eklof_check<RepCat>({s1}, filt), Error);
}

TEST_CASE("horseshoe lemma, explicit and randomized") {
    RingRepPtr r = constant_field_rep(FinitePoset::chain(2));
    Rep s0 = simple_at(r, 0), s1 = simple_at(r, 1), p0 = rep_projective(r, 0);
    std::vector<Rep> S{s0, s1, p0}; // trivial pair (all, injectives)

    auto e01 = ext1<RepCat>(s0, s1);
    auto top = ext1_witnesses<RepCat>(e01)[0]; // S1 -> P0 -> S0
    auto ax = approximation_sequences<RepCat>(S, top.i.src).first;
    auto az = approximation_sequences<RepCat>(S, top.d.tgt).first;
    auto hs = horseshoe<RepCat>(top, ax, az);
    CHECK(conflation_valid<RepCat>(hs.middle));
    CHECK(conflation_valid<RepCat>(hs.center));
    CHECK(conflation_valid<RepCat>(hs.bottom));
    // Middle object of the middle row is B_X + B_Z as an extension.
    CHECK(RepCat::qdim(hs.middle.i.tgt) ==
          RepCat::qdim(ax.i.tgt) + RepCat::qdim(az.i.tgt));
    // The center column approximates Y: the injective part has no ext from S.
    for (const auto& s : S) CHECK(ext1<RepCat>(s, hs.center.i.tgt).dim == 0);

    // Split conflation: middle column is the direct sum of the outer columns.
    auto sp = split_conflation<RepCat>(s1, s0);
    auto hs2 = horseshoe<RepCat>(sp, ax, az);
    CHECK(conflation_valid<RepCat>(hs2.center));
    CHECK(RepCat::qdim(hs2.center.i.tgt) == RepCat::qdim(ax.i.tgt) + RepCat::qdim(az.i.tgt));
}
