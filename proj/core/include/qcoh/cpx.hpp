#pragma once

#include <functional>
#include <vector>

#include "qcoh/homotopy.hpp"

namespace qcoh {

// ---------------------------------------------------------------------------
// Bounded cochain complexes of poset representations. The exact structure is
// componentwise: a conflation of complexes is one that is a conflation in
// every degree.
// ---------------------------------------------------------------------------

struct Complex {
    RingRepPtr rep;
    long lo = 0;
    std::vector<Rep> comps;    // degrees lo .. lo + comps.size() - 1
    std::vector<RepMor> diffs; // diffs[k]: comps[k] -> comps[k+1]

    long hi() const { return lo + static_cast<long>(comps.size()) - 1; }
    bool in_window(long n) const { return n >= lo && n <= hi(); }
    Rep at(long n) const { return in_window(n) ? comps[n - lo] : rep_zero(rep); }
    RepMor diff(long n) const; // at(n) -> at(n+1); zero outside the window

    std::size_t qdim() const;
    bool is_zero() const;
    bool valid() const; // component validity, differential shapes, d^2 = 0
};

Complex cpx_zero(RingRepPtr rep);
Complex disc(const Rep& x, long n);   // X = X in degrees n, n+1, identity differential
Complex sphere(const Rep& x, long n); // X in degree n only
Complex shift(const Complex& x, long k); // (X[k])^n = X^{n+k}, differential (-1)^k d

// Chain maps, stored degreewise over the source window.
struct CpxMor {
    Complex src, tgt;
    std::vector<RepMor> f; // f[k]: src.comps[k] -> tgt.at(src.lo + k)

    RepMor comp(long n) const; // zero morphism outside the source window
    bool valid() const;
    bool is_zero() const;
    bool degreewise_mono() const;
    bool degreewise_epi() const;
};

CpxMor cpx_id(const Complex& x);
CpxMor cpx_zero_mor(const Complex& a, const Complex& b);
CpxMor cpx_compose(const CpxMor& g, const CpxMor& f);
CpxMor cpx_add(const CpxMor& a, const CpxMor& b);
CpxMor cpx_sub(const CpxMor& a, const CpxMor& b);
CpxMor cpx_scale(const Q& c, const CpxMor& a);

std::vector<CpxMor> cpx_hom(const Complex& a, const Complex& b);
std::size_t cpx_mor_dim(const Complex& a, const Complex& b);
QMat cpx_mor_coords(const CpxMor& m);
CpxMor cpx_mor_from_coords(const Complex& a, const Complex& b, const QMat& coords,
                           std::size_t col = 0);

CpxMor cpx_kernel(const CpxMor& f);   // inclusion K -> src
CpxMor cpx_cokernel(const CpxMor& f); // projection tgt -> C

struct CpxSum {
    Complex obj;
    CpxMor inl, inr, prl, prr;
};
CpxSum cpx_direct_sum(const Complex& a, const Complex& b);

struct CpxPresentation {
    Complex p;       // a direct sum of discs on vertex projectives
    CpxMor epi;      // p ->> x
    CpxMor ker_incl; // kernel -> p
};
CpxPresentation cpx_presentation(const Complex& x);

bool cpx_isomorphic(const Complex& a, const Complex& b, unsigned seed = 1);

// Cocycles, coboundaries, cohomology.
RepMor cpx_cycles(const Complex& x, long n);     // inclusion Z^n -> X^n
Rep cpx_cohomology_at(const Complex& x, long n); // H^n = Z^n / B^n
std::vector<Rep> cohomology_objects(const Complex& x); // degrees lo .. hi
bool is_acyclic(const Complex& x);

Complex cone(const CpxMor& f); // C^n = X^{n+1} (+) Y^n, d(x,y) = (-dx, f x + dy)

// Tilde class: acyclic with all components and all cocycle objects in the class.
bool is_in_tilde(const std::function<bool(const Rep&)>& pred, const Complex& x);

// dg-class membership within a degree window: orthogonality against the
// spheres S^n(A) for A in the generating set and n in [nlo, nhi].
bool is_in_dg_left(const std::vector<Rep>& b_set, const Complex& x, long nlo, long nhi);
bool is_in_dg_right(const std::vector<Rep>& a_set, const Complex& x, long nlo, long nhi);

// ---------------------------------------------------------------------------
// The category trait, for instantiating the homological engine and the model
// structures over bounded complexes.
// ---------------------------------------------------------------------------

struct CpxCat {
    using Obj = Complex;
    using Mor = CpxMor;
    using Sum = CpxSum;
    using Pres = CpxPresentation;

    static Mor id(const Obj& x) { return cpx_id(x); }
    static Mor zero_mor(const Obj& a, const Obj& b) { return cpx_zero_mor(a, b); }
    static Obj zero_obj(const Obj& like) { return cpx_zero(like.rep); }
    static Mor compose(const Mor& g, const Mor& f) { return cpx_compose(g, f); }
    static Mor add(const Mor& a, const Mor& b) { return cpx_add(a, b); }
    static Mor sub(const Mor& a, const Mor& b) { return cpx_sub(a, b); }
    static Mor scale(const Q& c, const Mor& a) { return cpx_scale(c, a); }
    static std::vector<Mor> hom(const Obj& a, const Obj& b) { return cpx_hom(a, b); }
    static std::size_t mor_dim(const Obj& a, const Obj& b) { return cpx_mor_dim(a, b); }
    static QMat mor_coords(const Mor& m) { return cpx_mor_coords(m); }
    static Mor mor_from_coords(const Obj& a, const Obj& b, const QMat& c, std::size_t col = 0) {
        return cpx_mor_from_coords(a, b, c, col);
    }
    static Mor kernel(const Mor& f) { return cpx_kernel(f); }
    static Mor cokernel(const Mor& f) { return cpx_cokernel(f); }
    static Sum direct_sum(const Obj& a, const Obj& b) { return cpx_direct_sum(a, b); }
    static Pres presentation(const Obj& x) { return cpx_presentation(x); }
    static std::size_t qdim(const Obj& x) { return x.qdim(); }
    static bool is_zero_obj(const Obj& x) { return x.is_zero(); }
    static bool mor_is_zero(const Mor& m) { return m.is_zero(); }
    static bool mono(const Mor& m) { return m.degreewise_mono(); }
    static bool epi(const Mor& m) { return m.degreewise_epi(); }
    static bool is_iso(const Mor& m);
    static bool valid(const Mor& m) { return m.valid(); }
    static bool isomorphic(const Obj& a, const Obj& b) { return cpx_isomorphic(a, b); }
    static Obj generator(const Obj& like);

    static Mor induced_from_cokernel(const Mor& q, const Mor& t);
    static Mor factor_through_mono(const Mor& i, const Mor& t);
    static Mor induced_into_kernel(const Mor& k, const Mor& t) {
        return factor_through_mono(k, t);
    }
};

// ---------------------------------------------------------------------------
// Lifted cotorsion pair inside the acyclic complexes: the approximation
// sequence 0 -> X -> B -> A -> 0 of an acyclic X, assembled from per-degree
// approximations of the cocycle objects glued by the horseshoe construction.
// ---------------------------------------------------------------------------

Conflation<CpxCat> lift_cotorsion_first(const std::vector<Rep>& s_set, const Complex& x,
                                        std::size_t budget = 32);

// ---------------------------------------------------------------------------
// Ext adjunction: dim ext1(X, Z^n(Y)) embeds into dim ext1(S^n(X), Y), with
// equality for acyclic Y.
// ---------------------------------------------------------------------------

struct ExtAdjunctionReport {
    std::size_t module_side = 0;  // dim ext1(X, Z^n(Y))
    std::size_t complex_side = 0; // dim ext1(S^n(X), Y)
    bool mono = false;            // module_side <= complex_side
    bool iso = false;
    bool acyclic = false;
};
ExtAdjunctionReport ext_adjunction_check(const Rep& x, const Complex& y, long n);

// ---------------------------------------------------------------------------
// Monoidal structure over the constant-field backend: pointwise tensor of
// representations, internal hom by up-set-commuting families, and the complex
// tensor/hom with the standard sign conventions.
// ---------------------------------------------------------------------------

Rep rep_tensor(const Rep& a, const Rep& b);
RepMor rep_tensor_mor(const RepMor& f, const RepMor& g);
Rep rep_unit(RingRepPtr r); // the constant representation R (all dims 1, identity)

// Internal hom: H(a,b)(i) = commuting families (f_j: a(j) -> b(j))_{j >= i};
// `basis[i]` columns express the chosen basis of H(i) in the flat coordinates
// of the ambient product of vertexwise hom spaces over the up-set of i.
struct RepIHom {
    Rep obj;
    std::vector<QMat> basis;
};
RepIHom rep_ihom(const Rep& a, const Rep& b);
// Induced morphisms H(a,b) -> H(a,b2) (postcomposition by g: b -> b2) and
// H(a,b) -> H(a2,b) (precomposition by f: a2 -> a).
RepMor rep_ihom_post(const Rep& a, const RepMor& g);
RepMor rep_ihom_pre(const RepMor& f, const Rep& b);

// Tensor complex with summand bookkeeping: degree n holds the summands
// X^i (x) Y^j with i + j = n, listed in increasing i.
struct CpxTensor {
    Complex obj;
    // per degree (index n - obj.lo): list of (i, j) summands, in order.
    std::vector<std::vector<std::pair<long, long>>> summands;
};
CpxTensor tensor_complexes(const Complex& x, const Complex& y);
// f (x) g on the tensor complexes of the endpoints.
CpxMor tensor_cpx_mor(const CpxMor& f, const CpxMor& g);
Complex unit_complex(RingRepPtr r); // S^0(R)

// Hom complex: H^n = prod_i IHom(Y^i, Z^{i+n}), differential
// IHom(Y^i, d_Z) - (-1)^n IHom(d_Y, Z^j).
Complex hom_complexes(const Complex& y, const Complex& z);

// Pushout product f [x] g : (X (x) Y') +_{X (x) Y} (X' (x) Y) -> X' (x) Y'.
struct PushoutProduct {
    CpxMor map;               // the induced morphism out of the pushout corner
    PushoutData<CpxCat> corner;
};
PushoutProduct pushout_product(const CpxMor& f, const CpxMor& g);

// Instance-wise monoidal model checks: unit cofibrancy, inputs cofibrations,
// the pushout product an inflation with cokernel coker f (x) coker g, and
// triviality propagation via acyclicity.
CheckReport quillen_bifunctor_check(const CpxMor& f, const CpxMor& g,
                                    const std::function<bool(const Complex&)>& cof);

// ---------------------------------------------------------------------------
// Complexes of diagram modules over arbitrary ring diagrams (data-level, for
// the projective-line tensor examples): componentwise tensor of presentations.
// ---------------------------------------------------------------------------

DiagModule diag_tensor(const DiagModule& a, const DiagModule& b);
DiagMorphism diag_tensor_mor(const DiagMorphism& f, const DiagMorphism& g);

struct DiagComplex {
    RingRepPtr rep;
    long lo = 0;
    std::vector<DiagModule> comps;
    std::vector<DiagMorphism> diffs;

    long hi() const { return lo + static_cast<long>(comps.size()) - 1; }
    bool valid() const; // differential shapes and d^2 = 0
};

DiagComplex diag_sphere(const DiagModule& m, long n);
DiagComplex diag_unit_complex(RingRepPtr r); // S^0(R), R the rank-one free diagram
DiagComplex tensor_diag_complexes(const DiagComplex& x, const DiagComplex& y);

} // namespace qcoh
