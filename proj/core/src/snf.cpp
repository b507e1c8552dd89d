#include "qcoh/ring.hpp"

namespace qcoh {

namespace {

// Row/column operation helpers keeping U*A*V = D while also maintaining the
// inverses of U and V (cheap, and solve_linear wants them anyway).
struct SnfState {
    RingMatrix D, U, V, Uinv, Vinv;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < D.cols(); ++c) std::swap(D.at(i, c), D.at(j, c));
        for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U.at(i, c), U.at(j, c));
        for (std::size_t r = 0; r < Uinv.rows(); ++r) std::swap(Uinv.at(r, i), Uinv.at(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < D.rows(); ++r) std::swap(D.at(r, i), D.at(r, j));
        for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V.at(r, i), V.at(r, j));
        for (std::size_t c = 0; c < Vinv.cols(); ++c) std::swap(Vinv.at(i, c), Vinv.at(j, c));
    }
    // row_i += f * row_j
    void add_row(std::size_t i, std::size_t j, const RingElement& f) {
        for (std::size_t c = 0; c < D.cols(); ++c) D.at(i, c) = D.at(i, c) + f * D.at(j, c);
        for (std::size_t c = 0; c < U.cols(); ++c) U.at(i, c) = U.at(i, c) + f * U.at(j, c);
        for (std::size_t r = 0; r < Uinv.rows(); ++r)
            Uinv.at(r, j) = Uinv.at(r, j) - f * Uinv.at(r, i);
    }
    // col_i += f * col_j
    void add_col(std::size_t i, std::size_t j, const RingElement& f) {
        for (std::size_t r = 0; r < D.rows(); ++r) D.at(r, i) = D.at(r, i) + f * D.at(r, j);
        for (std::size_t r = 0; r < V.rows(); ++r) V.at(r, i) = V.at(r, i) + f * V.at(r, j);
        for (std::size_t c = 0; c < Vinv.cols(); ++c)
            Vinv.at(j, c) = Vinv.at(j, c) - f * Vinv.at(i, c);
    }
    void scale_row(std::size_t i, const RingElement& u) {
        RingElement ui = u.unit_inverse();
        for (std::size_t c = 0; c < D.cols(); ++c) D.at(i, c) = u * D.at(i, c);
        for (std::size_t c = 0; c < U.cols(); ++c) U.at(i, c) = u * U.at(i, c);
        for (std::size_t r = 0; r < Uinv.rows(); ++r) Uinv.at(r, i) = Uinv.at(r, i) * ui;
    }
};

} // namespace

SNFResult snf(const RingMatrix& a) {
    a.ring().require_euclidean();
    const std::size_t r = a.rows(), c = a.cols();
    SnfState s{a, RingMatrix::identity(a.ring(), r), RingMatrix::identity(a.ring(), c),
               RingMatrix::identity(a.ring(), r), RingMatrix::identity(a.ring(), c)};

    const std::size_t m = r < c ? r : c;
    for (std::size_t t = 0; t < m; ++t) {
        for (;;) {
            // Pivot: minimal Euclidean norm in the trailing block, ties row-major.
            bool found = false;
            std::size_t pi = t, pj = t;
            long best = 0;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j) {
                    const RingElement& e = s.D.at(i, j);
                    if (e.is_zero()) continue;
                    if (!found || e.norm() < best) {
                        found = true;
                        best = e.norm();
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) goto done;
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (s.D.at(i, t).is_zero()) continue;
                auto [q, rem] = RingElement::divmod(s.D.at(i, t), s.D.at(t, t));
                s.add_row(i, t, -q);
                if (!rem.is_zero()) dirty = true;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (s.D.at(t, j).is_zero()) continue;
                auto [q, rem] = RingElement::divmod(s.D.at(t, j), s.D.at(t, t));
                s.add_col(j, t, -q);
                if (!rem.is_zero()) dirty = true;
            }
            if (dirty) continue; // a strictly smaller remainder appeared; re-pivot

            // Enforce the divisibility chain: the pivot must divide everything
            // in the trailing block; drag an offending row in and restart.
            bool chain_ok = true;
            for (std::size_t i = t + 1; i < r && chain_ok; ++i)
                for (std::size_t j = t + 1; j < c && chain_ok; ++j) {
                    auto [q, rem] = RingElement::divmod(s.D.at(i, j), s.D.at(t, t));
                    (void)q;
                    if (!rem.is_zero()) {
                        s.add_row(t, i, RingElement(a.ring(), Q(1)));
                        chain_ok = false;
                    }
                }
            if (chain_ok) break;
        }

        // Normalize the pivot by a unit: constant 1 over the field, monic for
        // the polynomial windows, monic-with-support-starting-at-0 for Laurent.
        RingElement& d = s.D.at(t, t);
        if (!d.is_zero()) {
            const RingSpec& R = a.ring();
            RingElement u(R);
            if (R.kind == RingSpec::Kind::Field) {
                u = RingElement(R, Q(1) / d.coeff(0));
            } else {
                long lo = d.coeffs().begin()->first;
                long hi = d.coeffs().rbegin()->first;
                switch (R.window) {
                case Window::NonNeg: u = RingElement(R, Q(1) / d.coeff(hi)); break;
                case Window::NonPos: u = RingElement(R, Q(1) / d.coeff(lo)); break;
                case Window::Full: u = RingElement::monomial(R, -lo, Q(1) / d.coeff(hi)); break;
                }
            }
            s.scale_row(t, u);
        }
    }
done:
    return {s.U, s.D, s.V, s.Uinv, s.Vinv};
}

std::optional<RingMatrix> solve_linear(const RingMatrix& a, const RingMatrix& b) {
    if (a.rows() != b.rows() || !(a.ring() == b.ring()))
        throw Error(ErrorKind::Internal, "solve_linear shape/ring mismatch");
    SNFResult f = snf(a);
    // A x = b  <=>  D y = U b with x = V y.
    RingMatrix ub = f.U * b;
    RingMatrix y(a.ring(), a.cols(), b.cols());
    const std::size_t m = a.rows() < a.cols() ? a.rows() : a.cols();
    for (std::size_t col = 0; col < b.cols(); ++col) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const RingElement& rhs = ub.at(i, col);
            if (i < m && !f.D.at(i, i).is_zero()) {
                auto [q, rem] = RingElement::divmod(rhs, f.D.at(i, i));
                if (!rem.is_zero()) return std::nullopt;
                y.at(i, col) = q;
            } else if (!rhs.is_zero()) {
                return std::nullopt;
            }
        }
    }
    return f.V * y;
}

} // namespace qcoh
