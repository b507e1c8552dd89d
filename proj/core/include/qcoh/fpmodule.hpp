#pragma once

#include <optional>
#include <vector>

#include "qcoh/ring.hpp"
#include "qcoh/window.hpp"

namespace qcoh {

// Finitely presented module over a whitelisted Euclidean ring: cokernel of
// rel: R^r -> R^g (columns of `rel` are the relations). Optional grading
// assigns a degree to each generator.
struct FPModule {
    RingSpec ring;
    std::size_t gens = 0;
    RingMatrix rel; // gens x r
    std::optional<std::vector<long>> grading;

    FPModule() = default;
    FPModule(RingSpec r, std::size_t g)
        : ring(std::move(r)), gens(g), rel(ring, g, 0) {}
    FPModule(RingSpec r, std::size_t g, RingMatrix relations)
        : ring(std::move(r)), gens(g), rel(std::move(relations)) {}

    static FPModule free(RingSpec r, std::size_t rank) { return FPModule(std::move(r), rank); }
    static FPModule zero(RingSpec r) { return FPModule(std::move(r), 0); }

    bool is_zero_module() const;
    // Nonzero, non-unit invariant factors (the torsion part) and the free rank.
    std::vector<RingElement> invariant_factors() const;
    std::size_t free_rank() const;
    bool is_free() const; // no torsion: presentation trivializes to a free module
    // Total dimension over Q if finite.
    std::optional<std::size_t> qdim() const;

    // Is the column vector v in the image of the relation matrix?
    bool relation_member(const RingMatrix& v) const;
};

// Map between presented modules, given on generators: target.gens x source.gens
// matrix phi with phi * rel_src landing in the relation image of the target.
struct FPMap {
    FPModule src, tgt;
    RingMatrix phi;

    bool well_defined() const;
    bool is_zero_map() const;
};

FPMap fp_identity(const FPModule& m);
FPMap fp_compose(const FPMap& g, const FPMap& f); // g after f

FPModule base_change(const FPModule& m, const RingMap& f);
FPMap base_change(const FPMap& m, const RingMap& f);

// Free-module syzygies: columns spanning { x : A x = 0 } (free basis, SNF).
RingMatrix syzygies(const RingMatrix& a);

// Kernel with its inclusion, cokernel with its projection.
FPMap fp_kernel(const FPMap& f);
FPMap fp_cokernel(const FPMap& f);

bool fp_is_iso(const FPMap& f); // kernel and cokernel both vanish

// Basis of Hom(M, N) as a Q-vector space of generator matrices, computed on an
// exponent window for the matrix entries. When both modules are
// finite-dimensional over Q a sufficient window is chosen automatically;
// otherwise a missing window raises WindowRequired.
std::vector<FPMap> fp_hom(const FPModule& m, const FPModule& n,
                          std::optional<ExpWindow> window = std::nullopt);

// Tensor product of presentations: generators are pairs (first factor major),
// relations r (x) g' and g (x) r'. Gradings add when both factors carry one.
FPModule fp_tensor(const FPModule& m, const FPModule& n);

} // namespace qcoh
