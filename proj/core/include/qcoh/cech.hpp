#pragma once

#include <optional>
#include <vector>

#include "qcoh/diagram.hpp"

namespace qcoh {

// ---------------------------------------------------------------------------
// Geometry over finite upper semilattices: direct and inverse images along
// vertex evaluations, the alternating-sum resolution attached to a cover with
// its explicit per-vertex contracting homotopy, graded cohomology of twists,
// and locally projective detection.
//
// Direct images (F_x N)(y) = N (x) R(x v y) are finitely presented over
// R(x v y) but usually not over R(y); they are therefore carried by the
// pushforward ring diagram y -> R(x v y) on the same poset, and all
// certificates below are exact matrix identities over the join rings.
// ---------------------------------------------------------------------------

// Ring diagram over an upper semilattice, with a total join table and
// continuity certificates: for x <= y, x <= z the multiplication map
// R(y) (x)_{R(x)} R(z) -> R(y v z) must be bijective. For the whitelisted
// univariate rings this is decided by exponent-window arithmetic; violations
// are recorded with a witness triple. Opaque rings are skipped.
struct SemilatticeRep {
    RingRepPtr rep;
    std::vector<std::vector<std::size_t>> join; // total: join[i][j]
    std::vector<std::string> continuity;        // violations; empty = continuous

    bool continuous() const { return continuity.empty(); }
    std::size_t join_of(std::size_t i, std::size_t j) const { return join[i][j]; }
};

// Throws CoverInvalid when some pair has no least upper bound.
SemilatticeRep make_semilattice(RingRepPtr rep);

// Inverse image: evaluation at a vertex.
FPModule inverse_image(const SemilatticeRep& s, std::size_t x, const DiagModule& m);

// The ring diagram y -> R(x v y) on the same poset (edges are the ring maps
// R(x v y) -> R(x v z)); carrier of direct images.
RingRepPtr pushforward_ringrep(const SemilatticeRep& s, std::size_t x);

// Direct image of an R(x)-module presentation, as a quasi-coherent module
// over pushforward_ringrep(s, x): vertex y holds N (x) R(x v y), transitions
// are identity matrices on generators.
DiagModule direct_image(const SemilatticeRep& s, std::size_t x, const FPModule& n);

// Unit M -> F_x* F_x^* M and counit F_x^* F_x* N -> N on generators, together
// with exact verification of the two triangle identities (and naturality of
// the unit along the poset). unit[y] expresses the image of the generators of
// M(y) in the generators of M(x), over R(x v y).
struct AdjunctionWitness {
    DiagModule monad;                    // F_x* F_x^* M over pushforward_ringrep
    std::vector<RingMatrix> unit;        // per vertex y: M(x).gens x M(y).gens
    RingMatrix counit;                   // M(x).gens x M(x).gens over R(x)
    std::vector<std::string> violations; // empty = all identities hold
};
AdjunctionWitness adjunction_witness(const SemilatticeRep& s, std::size_t x, const DiagModule& m);

// The resolution 0 -> M -> C^0 M -> ... -> C^n M -> 0 attached to a cover
// x_0, ..., x_n, where C^p M sums the direct images over the (p+1)-element
// index tuples. Terms are kept in indexed form; evaluation at a vertex z
// yields modules M(z v x_{i_0} v ... v x_{i_p}) and the differential is the
// alternating sum of transitions of M.
struct CechComplex {
    SemilatticeRep srep;
    DiagModule m;
    std::vector<std::size_t> cover;
    std::vector<std::vector<std::vector<std::size_t>>> tuples; // tuples[p]: sorted (p+1)-subsets
    std::vector<std::size_t> anchor; // per vertex z: a cover index with x_a <= z

    std::size_t length() const { return tuples.size(); }
    // z v x_{t_0} v ... (the vertex of the evaluated component).
    std::size_t join_at(std::size_t z, const std::vector<std::size_t>& t) const;
};

// Throws CoverInvalid unless every vertex is a join of cover elements.
CechComplex cech_resolution(const SemilatticeRep& s, const DiagModule& m,
                            std::vector<std::size_t> cover);

// Exactness certificate: the differential squares to zero and, at every
// vertex z, the contracting homotopy s(alpha)_{j_0..j_{p-1}} =
// alpha_{a(z),j_0,..,j_{p-1}} (repeated index = 0, unsorted = signed sort)
// satisfies s d + d s = id through the augmented complex. All identities are
// checked exactly, modulo the relations of the target presentations; the
// returned list of violations is empty exactly when the resolution is
// certified exact.
std::vector<std::string> cech_certificate(const CechComplex& c);

// Per-degree dimensions of the limit of the diagram (compatible families of
// homogeneous sections), for grades lo..hi. Vertex modules must be free with
// a grading and graded transitions.
std::vector<std::size_t> global_sections(const DiagModule& m, long lo, long hi);

// Cohomology of the global-sections complex of the resolution, degreewise on
// the grading. h[p][d - lo] = dim H^p in grade d; `stable` reports that the
// boundary grades carry no cohomology (widen the window otherwise).
struct CohomologyTable {
    long lo = 0, hi = 0;
    std::vector<std::vector<std::size_t>> h;
    bool stable = true;

    std::size_t total(std::size_t p) const;
};
CohomologyTable cohomology(const SemilatticeRep& s, const DiagModule& m,
                           const std::vector<std::size_t>& cover,
                           std::optional<std::pair<long, long>> window = std::nullopt);

// dim Hom(O(m), O(n)) on the projective line, computed two ways (windowed
// constraint solve, and H^0 of the difference twist) and checked to agree.
std::size_t hom_twists(long m, long n);

// Every vertex presentation trivializes to a free module (unit invariant
// factors). Throws UnsupportedRing on opaque vertices.
bool locally_projective(const DiagModule& m);

// The canonical map from the sum of the listed twists, over all windowed
// homomorphisms, is an epimorphism onto m (a module over the projective-line
// diagram).
bool twist_generation_check(const DiagModule& m, const std::vector<long>& twists,
                            std::optional<ExpWindow> window = std::nullopt);

} // namespace qcoh
