#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcoh/fpmodule.hpp"
#include "qcoh/poset.hpp"

namespace qcoh {

// Ring diagram R: I -> Rings. Edge maps carry whitelist certificates (all
// flat); opaque rings are allowed as data but refuse arithmetic.
struct RingRep {
    FinitePoset poset;
    std::vector<RingSpec> rings;                           // per vertex
    std::map<std::pair<std::size_t, std::size_t>, RingMap> edges; // strict i < j

    RingRep(FinitePoset p, std::vector<RingSpec> r);

    const RingSpec& ring(std::size_t i) const { return rings[i]; }
    RingMap edge(std::size_t i, std::size_t j) const;

    // R^i_i = id and R^i_k = R^j_k o R^i_j at certificate level.
    std::vector<std::string> validate() const;

    bool constant_field() const;
};

using RingRepPtr = std::shared_ptr<const RingRep>;

RingRepPtr constant_field_rep(const FinitePoset& p);

// Module over a ring diagram: per-vertex finite presentations plus transition
// matrices on generators. trans(i,j) has shape M(j).gens x M(i).gens over R(j);
// it extends semilinearly along R^i_j.
struct DiagModule {
    RingRepPtr rep;
    std::vector<FPModule> vertex;
    std::map<std::pair<std::size_t, std::size_t>, RingMatrix> trans;

    const FPModule& at(std::size_t i) const { return vertex[i]; }
    RingMatrix transition(std::size_t i, std::size_t j) const; // i <= j
    // Apply M^i_j to an element of M(i) in generator coordinates.
    RingMatrix push(std::size_t i, std::size_t j, const RingMatrix& v) const;

    bool is_zero() const;
};

DiagModule zero_module(RingRepPtr rep);
DiagModule direct_sum(const DiagModule& a, const DiagModule& b);

// Structure-preserving map: per-vertex generator matrices over R(i).
struct DiagMorphism {
    DiagModule src, tgt;
    std::vector<RingMatrix> f; // per vertex: tgt(i).gens x src(i).gens over R(i)
};

DiagMorphism diag_identity(const DiagModule& m);
DiagMorphism diag_zero(const DiagModule& src, const DiagModule& tgt);
DiagMorphism diag_compose(const DiagMorphism& g, const DiagMorphism& f);
DiagMorphism diag_add(const DiagMorphism& a, const DiagMorphism& b);
DiagMorphism diag_scale(const Q& c, const DiagMorphism& a);
bool diag_morphism_valid(const DiagMorphism& m, std::string* why = nullptr);

// Diagnostic validation: every violated invariant with its witness.
std::vector<std::string> validate(const DiagModule& m);

struct QcohReport {
    bool quasicoherent = true;
    std::optional<std::pair<std::size_t, std::size_t>> failing_edge;
};
QcohReport is_quasicoherent(const DiagModule& m);

// P_i(j) = R(j) for j >= i, else 0.
DiagModule projective_generator(RingRepPtr rep, std::size_t i);

// Hom(P_i, M) ~ M(i): both directions of the bijection.
DiagMorphism morphism_from_element(std::size_t i, const DiagModule& m, const RingMatrix& elem);
RingMatrix element_from_morphism(std::size_t i, const DiagMorphism& f);

// Componentwise abelian structure.
DiagMorphism kernel(const DiagMorphism& f);   // returns inclusion K -> src
DiagMorphism cokernel(const DiagMorphism& f); // returns projection tgt -> C
DiagMorphism image(const DiagMorphism& f);    // returns inclusion im -> tgt

// Exact basis of the solution space of the commuting-square constraints.
std::vector<DiagMorphism> hom_space(const DiagModule& m, const DiagModule& n,
                                    std::optional<ExpWindow> window = std::nullopt);

} // namespace qcoh
