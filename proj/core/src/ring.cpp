#include "qcoh/ring.hpp"

#include <sstream>

namespace qcoh {

std::string RingSpec::str() const {
    switch (kind) {
    case Kind::Field: return "field";
    case Kind::Opaque: return "opaque(" + label + ")";
    case Kind::Laurent:
        switch (window) {
        case Window::NonNeg: return "poly(" + var + ")";
        case Window::NonPos: return "ipoly(" + var + ")";
        case Window::Full: return "laurent(" + var + ")";
        }
    }
    return "?";
}

void RingElement::set(long e, const Q& v) {
    if (!ring_.admits_exponent(e))
        throw Error(ErrorKind::UnsupportedRing,
                    "exponent " + std::to_string(e) + " outside window of " + ring_.str());
    if (v == 0)
        c_.erase(e);
    else
        c_[e] = v;
}

RingElement RingElement::operator+(const RingElement& o) const {
    RingElement r(ring_);
    r.c_ = c_;
    for (const auto& [e, v] : o.c_) {
        Q s = r.coeff(e) + v;
        if (s == 0)
            r.c_.erase(e);
        else
            r.c_[e] = s;
    }
    return r;
}

RingElement RingElement::operator-() const {
    RingElement r(ring_);
    for (const auto& [e, v] : c_) r.c_[e] = -v;
    return r;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator*(const RingElement& o) const {
    RingElement r(ring_);
    for (const auto& [e1, v1] : c_)
        for (const auto& [e2, v2] : o.c_) {
            long e = e1 + e2;
            Q s = r.coeff(e) + v1 * v2;
            if (s == 0)
                r.c_.erase(e);
            else
                r.c_[e] = s;
        }
    return r;
}

long RingElement::norm() const {
    if (is_zero()) return 0;
    long lo = c_.begin()->first;
    long hi = c_.rbegin()->first;
    if (ring_.kind == RingSpec::Kind::Field) return 0;
    switch (ring_.window) {
    case Window::NonNeg: return hi;
    case Window::NonPos: return -lo;
    case Window::Full: return hi - lo;
    }
    return 0;
}

RingElement RingElement::unit_inverse() const {
    if (!is_unit()) throw Error(ErrorKind::Internal, "unit_inverse of a non-unit");
    // A unit is c*x^e (single term).
    auto [e, v] = *c_.begin();
    if (!ring_.admits_exponent(-e))
        throw Error(ErrorKind::Internal, "unit with non-invertible exponent");
    return monomial(ring_, -e, Q(1) / v);
}

std::pair<RingElement, RingElement> RingElement::divmod(const RingElement& a,
                                                        const RingElement& b) {
    if (b.is_zero()) throw Error(ErrorKind::Internal, "division by zero");
    const RingSpec& R = a.ring();
    if (R.kind == RingSpec::Kind::Field)
        return {monomial(R, 0, a.coeff(0) / b.coeff(0)), RingElement(R)};

    RingElement rem = a;
    RingElement quo(R);
    switch (R.window) {
    case Window::NonNeg:
        // Classical division by the leading (highest) term; norm = degree.
        while (!rem.is_zero() && rem.norm() >= b.norm()) {
            long e = rem.c_.rbegin()->first - b.c_.rbegin()->first;
            RingElement t = monomial(R, e, rem.c_.rbegin()->second / b.c_.rbegin()->second);
            quo = quo + t;
            rem = rem - t * b;
        }
        break;
    case Window::NonPos:
        // Mirror image in y = x^-1: divide by the lowest term; norm = -min exp.
        while (!rem.is_zero() && rem.norm() >= b.norm()) {
            long e = rem.c_.begin()->first - b.c_.begin()->first;
            RingElement t = monomial(R, e, rem.c_.begin()->second / b.c_.begin()->second);
            quo = quo + t;
            rem = rem - t * b;
        }
        break;
    case Window::Full:
        // norm = support width. Killing the top term against b's top term drops
        // the top by >= 1 while the bottom cannot sink below top - width(b), so
        // the width strictly decreases; loop ends with rem = 0 or width < width(b).
        while (!rem.is_zero() && rem.norm() >= b.norm()) {
            long e = rem.c_.rbegin()->first - b.c_.rbegin()->first;
            RingElement t = monomial(R, e, rem.c_.rbegin()->second / b.c_.rbegin()->second);
            quo = quo + t;
            rem = rem - t * b;
        }
        break;
    }
    return {quo, rem};
}

std::string RingElement::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const std::string& v = ring_.var;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << (c > 0 ? " + " : " - ");
        Q ac = (!first && c < 0) ? Q(-c) : c;
        first = false;
        if (e == 0 || ac != 1) os << ac.str();
        if (e != 0) {
            if (ac != 1) os << "*";
            os << v;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

RingMap RingMap::make(const RingSpec& src, const RingSpec& tgt) {
    if (src == tgt) return {src, tgt, Cert::Identity};
    if (src.kind == RingSpec::Kind::Field && tgt.kind == RingSpec::Kind::Laurent)
        return {src, tgt, Cert::FieldUnit};
    if (src.kind == RingSpec::Kind::Laurent && tgt.kind == RingSpec::Kind::Laurent &&
        src.var == tgt.var) {
        if (tgt.window == Window::Full || src.window == tgt.window)
            return {src, tgt, Cert::WindowInclusion};
        // opposite windows: x -> x^-1 lands in the other window
        return {src, tgt, Cert::VarSwap};
    }
    throw Error(ErrorKind::UnsupportedRing,
                "no whitelisted homomorphism " + src.str() + " -> " + tgt.str());
}

RingElement RingMap::apply(const RingElement& x) const {
    if (cert == Cert::OpaqueEdge)
        throw Error(ErrorKind::UnsupportedRing, "opaque ring edge carries no arithmetic");
    if (!(x.ring() == source)) throw Error(ErrorKind::Internal, "ring map applied to wrong ring");
    RingElement y(target);
    for (const auto& [e, v] : x.coeffs()) {
        long te = (cert == Cert::VarSwap) ? -e : e;
        y.set(te, y.coeff(te) + v);
    }
    return y;
}

RingMap ringmap_compose(const RingMap& g, const RingMap& f) {
    if (!(f.target == g.source))
        throw Error(ErrorKind::Internal, "ring map composition mismatch");
    if (f.cert == RingMap::Cert::OpaqueEdge || g.cert == RingMap::Cert::OpaqueEdge)
        return RingMap::opaque(f.source, g.target);
    bool swap = (f.cert == RingMap::Cert::VarSwap) != (g.cert == RingMap::Cert::VarSwap);
    RingMap::Cert c;
    if (swap)
        c = RingMap::Cert::VarSwap;
    else if (f.source == g.target)
        c = RingMap::Cert::Identity;
    else if (f.source.kind == RingSpec::Kind::Field)
        c = RingMap::Cert::FieldUnit;
    else
        c = RingMap::Cert::WindowInclusion;
    return {f.source, g.target, c};
}

RingMatrix RingMatrix::identity(const RingSpec& ring, std::size_t n) {
    RingMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = RingElement(ring, Q(1));
    return m;
}

RingMatrix RingMatrix::from_qmat(const RingSpec& ring, const QMat& q) {
    RingMatrix m(ring, q.rows(), q.cols());
    for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j)
            if (q.at(i, j) != 0) m.at(i, j) = RingElement(ring, q.at(i, j));
    return m;
}

bool RingMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

RingMatrix RingMatrix::operator*(const RingMatrix& o) const {
    if (c_ != o.r_ || !(ring_ == o.ring_))
        throw Error(ErrorKind::Internal, "ring matrix product shape/ring mismatch");
    RingMatrix m(ring_, r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.c_; ++j)
                if (!o.at(k, j).is_zero())
                    m.at(i, j) = m.at(i, j) + at(i, k) * o.at(k, j);
        }
    return m;
}

RingMatrix RingMatrix::operator+(const RingMatrix& o) const {
    RingMatrix m(ring_, r_, c_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
    return m;
}

RingMatrix RingMatrix::operator-(const RingMatrix& o) const {
    RingMatrix m(ring_, r_, c_);
    for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] - o.e_[i];
    return m;
}

RingMatrix RingMatrix::hcat(const RingMatrix& a, const RingMatrix& b) {
    RingMatrix m(a.ring(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

RingMatrix RingMatrix::vcat(const RingMatrix& a, const RingMatrix& b) {
    RingMatrix m(a.ring(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
    return m;
}

RingMatrix RingMatrix::submatrix(std::size_t i0, std::size_t j0, std::size_t nr,
                                 std::size_t nc) const {
    RingMatrix m(ring_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = at(i0 + i, j0 + j);
    return m;
}

RingMatrix RingMatrix::map(const RingMap& f) const {
    RingMatrix m(f.target, r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m.at(i, j) = f.apply(at(i, j));
    return m;
}

std::string RingMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r_; ++i) {
        os << "[";
        for (std::size_t j = 0; j < c_; ++j) os << at(i, j).str() << (j + 1 < c_ ? ", " : "");
        os << "]" << (i + 1 < r_ ? "; " : "");
    }
    os << "]";
    return os.str();
}


RingMatrix ring_kron(const RingMatrix& a, const RingMatrix& b) {
    RingMatrix m(a.ring(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    m.at(i * b.rows() + p, j * b.cols() + q) = a.at(i, j) * b.at(p, q);
        }
    return m;
}

} // namespace qcoh
