#pragma once

#include <cassert>
#include <optional>
#include <utility>
#include <vector>

#include "qcoh/rational.hpp"

namespace qcoh {

// Dense matrix over Q, row-major. All elimination is exact fraction-arithmetic
// Gauss-Jordan; no pivot-growth control is attempted (desk scale).
class QMat {
public:
    QMat() : r_(0), c_(0) {}
    QMat(std::size_t r, std::size_t c) : r_(r), c_(c), e_(r * c) {}

    static QMat identity(std::size_t n) {
        QMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }

    Q& at(std::size_t i, std::size_t j) {
        assert(i < r_ && j < c_);
        return e_[i * c_ + j];
    }
    const Q& at(std::size_t i, std::size_t j) const {
        assert(i < r_ && j < c_);
        return e_[i * c_ + j];
    }

    bool is_zero() const {
        for (const auto& x : e_)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const QMat& o) const { return r_ == o.r_ && c_ == o.c_ && e_ == o.e_; }

    QMat operator*(const QMat& o) const {
        assert(c_ == o.r_);
        QMat m(r_, o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const Q& a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < o.c_; ++j)
                    if (o.at(k, j) != 0) m.at(i, j) += a * o.at(k, j);
            }
        return m;
    }

    QMat operator+(const QMat& o) const {
        assert(r_ == o.r_ && c_ == o.c_);
        QMat m(r_, c_);
        for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] + o.e_[i];
        return m;
    }

    QMat operator-(const QMat& o) const {
        assert(r_ == o.r_ && c_ == o.c_);
        QMat m(r_, c_);
        for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] - o.e_[i];
        return m;
    }

    QMat operator*(const Q& s) const {
        QMat m(r_, c_);
        for (std::size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * s;
        return m;
    }

    QMat transpose() const {
        QMat m(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    // Kronecker product, blocks of `o` scaled by entries of *this.
    QMat kron(const QMat& o) const {
        QMat m(r_ * o.r_, c_ * o.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) {
                if (at(i, j) == 0) continue;
                for (std::size_t p = 0; p < o.r_; ++p)
                    for (std::size_t q = 0; q < o.c_; ++q)
                        m.at(i * o.r_ + p, j * o.c_ + q) = at(i, j) * o.at(p, q);
            }
        return m;
    }

    static QMat hcat(const QMat& a, const QMat& b) {
        assert(a.rows() == b.rows());
        QMat m(a.rows(), a.cols() + b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
            for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
        }
        return m;
    }

    static QMat vcat(const QMat& a, const QMat& b) {
        assert(a.cols() == b.cols());
        QMat m(a.rows() + b.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
        return m;
    }

    QMat submatrix(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
        QMat m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m.at(i, j) = at(i0 + i, j0 + j);
        return m;
    }

    QMat column(std::size_t j) const { return submatrix(0, j, r_, 1); }

    // In-place reduced row echelon form; returns pivot column indices.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < c_ && row < r_; ++col) {
            std::size_t sel = row;
            while (sel < r_ && at(sel, col) == 0) ++sel;
            if (sel == r_) continue;
            if (sel != row)
                for (std::size_t j = 0; j < c_; ++j) std::swap(at(sel, j), at(row, j));
            Q inv = Q(1) / at(row, col);
            for (std::size_t j = col; j < c_; ++j) at(row, j) *= inv;
            for (std::size_t i = 0; i < r_; ++i) {
                if (i == row || at(i, col) == 0) continue;
                Q f = at(i, col);
                for (std::size_t j = col; j < c_; ++j) at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        QMat m = *this;
        return m.rref().size();
    }

    // Columns spanning the null space.
    QMat kernel() const {
        QMat m = *this;
        auto pivots = m.rref();
        std::vector<bool> is_pivot(c_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::size_t nfree = c_ - pivots.size();
        QMat k(c_, nfree);
        std::size_t col = 0;
        for (std::size_t j = 0; j < c_; ++j) {
            if (is_pivot[j]) continue;
            k.at(j, col) = 1;
            for (std::size_t p = 0; p < pivots.size(); ++p) k.at(pivots[p], col) = -m.at(p, j);
            ++col;
        }
        return k;
    }

    // Solve A X = B; nullopt when inconsistent.
    static std::optional<QMat> solve(const QMat& a, const QMat& b) {
        assert(a.rows() == b.rows());
        QMat aug = hcat(a, b);
        auto pivots = aug.rref();
        // Any pivot landing in the B block certifies inconsistency.
        for (auto p : pivots)
            if (p >= a.cols()) return std::nullopt;
        QMat x(a.cols(), b.cols());
        for (std::size_t p = 0; p < pivots.size(); ++p)
            for (std::size_t j = 0; j < b.cols(); ++j)
                x.at(pivots[p], j) = aug.at(p, a.cols() + j);
        return x;
    }

    std::optional<QMat> inverse() const {
        if (r_ != c_) return std::nullopt;
        auto x = solve(*this, identity(r_));
        if (!x) return std::nullopt;
        if (!(*x * *this == identity(r_)) || !(*this * *x == identity(r_))) return std::nullopt;
        return x;
    }

    // Surjection q: Q^rows -> Q^(rows - rank) with kernel = column span of *this,
    // i.e. coordinates on the quotient by the column space.
    QMat quotient_map() const {
        QMat t = transpose();
        // rows of t span the subspace; the quotient map is any completion of a
        // basis: take kernel of t as functionals.
        return t.kernel().transpose();
    }

    // A basis of the column space (the pivot columns).
    QMat column_space() const {
        QMat m = *this;
        auto pivots = m.rref();
        QMat b(r_, pivots.size());
        for (std::size_t k = 0; k < pivots.size(); ++k)
            for (std::size_t i = 0; i < r_; ++i) b.at(i, k) = at(i, pivots[k]);
        return b;
    }

private:
    std::size_t r_, c_;
    std::vector<Q> e_;
};

} // namespace qcoh
