#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcoh/error.hpp"
#include "qcoh/qmat.hpp"
#include "qcoh/rational.hpp"

namespace qcoh {

// Legal exponent sets for the univariate (Laurent) rings:
//   NonNeg: Q[x]      NonPos: Q[x^-1]      Full: Q[x, x^-1]
enum class Window { NonNeg, NonPos, Full };

struct RingSpec {
    enum class Kind { Field, Laurent, Opaque };

    Kind kind = Kind::Field;
    std::string var;    // Laurent only
    Window window = Window::NonNeg;
    std::string label;  // Opaque only: a human-readable description (no arithmetic)

    static RingSpec field() { return RingSpec{}; }
    static RingSpec poly(std::string v) { return {Kind::Laurent, std::move(v), Window::NonNeg, ""}; }
    static RingSpec ipoly(std::string v) { return {Kind::Laurent, std::move(v), Window::NonPos, ""}; }
    static RingSpec laurent(std::string v) { return {Kind::Laurent, std::move(v), Window::Full, ""}; }
    static RingSpec opaque(std::string lbl) { return {Kind::Opaque, "", Window::NonNeg, std::move(lbl)}; }

    bool operator==(const RingSpec&) const = default;

    bool euclidean() const { return kind != Kind::Opaque; }
    void require_euclidean() const {
        if (!euclidean())
            throw Error(ErrorKind::UnsupportedRing,
                        "ring '" + label + "' carries data only; no arithmetic is available");
    }
    bool admits_exponent(long e) const {
        if (kind != Kind::Laurent) return e == 0;
        switch (window) {
        case Window::NonNeg: return e >= 0;
        case Window::NonPos: return e <= 0;
        case Window::Full: return true;
        }
        return false;
    }
    std::string str() const;
};

// Element of a whitelisted ring: finite exponent -> coefficient map.
// Invariants: no zero coefficients stored; exponents inside the window.
class RingElement {
public:
    RingElement() = default;
    explicit RingElement(RingSpec r) : ring_(std::move(r)) { ring_.require_euclidean(); }
    RingElement(RingSpec r, const Q& c) : RingElement(std::move(r)) { set(0, c); }

    static RingElement monomial(RingSpec r, long e, const Q& c) {
        RingElement x(std::move(r));
        x.set(e, c);
        return x;
    }

    const RingSpec& ring() const { return ring_; }
    const std::map<long, Q>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    Q coeff(long e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Q(0) : it->second;
    }
    void set(long e, const Q& v);

    bool operator==(const RingElement& o) const { return ring_ == o.ring_ && c_ == o.c_; }

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;

    // Euclidean data. norm: Field 0; NonNeg degree; NonPos -(min exponent);
    // Full: width of the exponent support. Units are exactly the norm-0 nonzero
    // elements in every case.
    long norm() const;
    bool is_unit() const { return !is_zero() && norm() == 0; }
    RingElement unit_inverse() const;

    // a = q*b + r with r = 0 or norm(r) < norm(b).
    static std::pair<RingElement, RingElement> divmod(const RingElement& a, const RingElement& b);

    std::string str() const;

private:
    RingSpec ring_;
    std::map<long, Q> c_;
};

// Whitelisted flat ring homomorphisms between the univariate rings (and Q).
// Only certificates are stored; flatness comes with the certificate.
struct RingMap {
    enum class Cert {
        Identity,        // R -> R
        WindowInclusion, // same variable, window widens (localization)
        VarSwap,         // x -> x^-1 composed with an inclusion
        FieldUnit,       // Q -> R, constants
        OpaqueEdge,      // involves an opaque ring; data only, no arithmetic
    };

    RingSpec source, target;
    Cert cert = Cert::Identity;

    static RingMap identity(RingSpec r) { return {r, r, Cert::Identity}; }
    static RingMap make(const RingSpec& src, const RingSpec& tgt); // infer a legal certificate
    static RingMap opaque(RingSpec src, RingSpec tgt) {
        return {std::move(src), std::move(tgt), Cert::OpaqueEdge};
    }

    RingElement apply(const RingElement& x) const;
    bool operator==(const RingMap&) const = default;
};

// g after f, tracked at certificate level (net variable swap parity).
RingMap ringmap_compose(const RingMap& g, const RingMap& f);

// Matrix over one whitelisted ring.
class RingMatrix {
public:
    RingMatrix() : r_(0), c_(0) {}
    RingMatrix(RingSpec ring, std::size_t r, std::size_t c)
        : ring_(std::move(ring)), r_(r), c_(c), e_(r * c, RingElement(ring_)) {
        ring_.require_euclidean();
    }

    static RingMatrix identity(const RingSpec& ring, std::size_t n);
    static RingMatrix from_qmat(const RingSpec& ring, const QMat& m);

    const RingSpec& ring() const { return ring_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    RingElement& at(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
    const RingElement& at(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }

    bool is_zero() const;
    bool operator==(const RingMatrix& o) const = default;

    RingMatrix operator*(const RingMatrix& o) const;
    RingMatrix operator+(const RingMatrix& o) const;
    RingMatrix operator-(const RingMatrix& o) const;

    static RingMatrix hcat(const RingMatrix& a, const RingMatrix& b);
    static RingMatrix vcat(const RingMatrix& a, const RingMatrix& b);
    RingMatrix submatrix(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const;
    RingMatrix column(std::size_t j) const { return submatrix(0, j, r_, 1); }

    // Entry-wise image under a ring map (matrix over the target ring).
    RingMatrix map(const RingMap& f) const;

    std::string str() const;

private:
    RingSpec ring_;
    std::size_t r_, c_;
    std::vector<RingElement> e_;
};

// Smith normal form: U*A*V = D with U, V unit-determinant and the diagonal a
// divisibility chain d1 | d2 | ...
struct SNFResult {
    RingMatrix U, D, V;
    RingMatrix Uinv, Vinv; // maintained alongside, handy for solving
};

// Kronecker product (blocks of b scaled by entries of a).
RingMatrix ring_kron(const RingMatrix& a, const RingMatrix& b);

SNFResult snf(const RingMatrix& a);

// Exact solve A x = b over the ring via SNF (divisibility test); nullopt when
// no solution exists.
std::optional<RingMatrix> solve_linear(const RingMatrix& a, const RingMatrix& b);

} // namespace qcoh
