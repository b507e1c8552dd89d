#pragma once

#include "qcoh/cpx.hpp"
#include "qcoh/model.hpp"

namespace qcoh {

// ---------------------------------------------------------------------------
// The injective model structure on bounded complexes over a constant-field
// poset diagram: every object is cofibrant, the trivial objects are the
// acyclic complexes, and the fibrant objects are the bounded complexes with
// injective components. `s_set` is a complete list of indecomposables for the
// vertexwise representation category; injectivity is decided against it.
//
// Degree conventions are cohomological throughout: differentials raise the
// degree, S^n places an object in degree n, and the suspension arising from
// 0 -> X -> W -> SX -> 0 with trivial W shifts cohomology down by one, so
// that S(S^0(M)) is quasi-isomorphic to the shifted sphere S^{-1}(M).
// ---------------------------------------------------------------------------

// Inflation X -> (+)_n D^{n-1}(I^n) into a contractible complex of injectives,
// with arbitrary cokernel: the first sequence of (everything, tilde-injective).
Conflation<CpxCat> tilde_injective_first(const std::vector<Rep>& s_set, const Complex& x,
                                         std::size_t budget = 32);

// Inflation X -> B with B a bounded complex of injectives and acyclic
// cokernel: the first sequence of (acyclic, dg-injective), built by totalizing
// degreewise injective coresolutions of length one.
Conflation<CpxCat> dg_injective_first(const std::vector<Rep>& s_set, const Complex& x,
                                      std::size_t budget = 32);

// Deflation A ->> X with acyclic A and dg-injective kernel: the second
// sequence of (acyclic, dg-injective), obtained from a contractible projective
// precover by pushout.
Conflation<CpxCat> dg_injective_second(const std::vector<Rep>& s_set, const Complex& x,
                                       std::size_t budget = 32);

HoveyTriple<CpxCat> cpx_injective_triple(std::vector<Rep> s_set, std::size_t budget = 32);

} // namespace qcoh
