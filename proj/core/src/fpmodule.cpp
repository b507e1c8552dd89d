#include "qcoh/fpmodule.hpp"

#include <algorithm>

namespace qcoh {

bool FPModule::is_zero_module() const {
    if (gens == 0) return true;
    SNFResult f = snf(rel);
    // Zero iff every generator is killed by a unit diagonal entry.
    if (rel.cols() < gens) return false;
    for (std::size_t i = 0; i < gens; ++i)
        if (!f.D.at(i, i).is_unit()) return false;
    return true;
}

std::vector<RingElement> FPModule::invariant_factors() const {
    std::vector<RingElement> out;
    if (gens == 0) return out;
    SNFResult f = snf(rel);
    std::size_t m = std::min(rel.rows(), rel.cols());
    for (std::size_t i = 0; i < m; ++i) {
        const RingElement& d = f.D.at(i, i);
        if (!d.is_zero() && !d.is_unit()) out.push_back(d);
    }
    return out;
}

std::size_t FPModule::free_rank() const {
    if (gens == 0) return 0;
    SNFResult f = snf(rel);
    std::size_t m = std::min(rel.rows(), rel.cols());
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (!f.D.at(i, i).is_zero()) ++nonzero;
    return gens - nonzero;
}

bool FPModule::is_free() const {
    SNFResult f = snf(rel);
    std::size_t m = std::min(rel.rows(), rel.cols());
    for (std::size_t i = 0; i < m; ++i) {
        const RingElement& d = f.D.at(i, i);
        if (!d.is_zero() && !d.is_unit()) return false;
    }
    return true;
}

std::optional<std::size_t> FPModule::qdim() const {
    std::size_t fr = free_rank();
    if (ring.kind == RingSpec::Kind::Field) return fr;
    if (fr > 0) return std::nullopt;
    std::size_t d = 0;
    for (const auto& f : invariant_factors()) d += static_cast<std::size_t>(f.norm());
    return d;
}

bool FPModule::relation_member(const RingMatrix& v) const {
    if (gens == 0) return true;
    return solve_linear(rel, v).has_value();
}

bool FPMap::well_defined() const {
    if (src.gens == 0 || tgt.gens == 0) return true;
    RingMatrix moved = phi * src.rel;
    return solve_linear(tgt.rel, moved).has_value() || moved.is_zero();
}

bool FPMap::is_zero_map() const {
    for (std::size_t j = 0; j < phi.cols(); ++j)
        if (!tgt.relation_member(phi.column(j))) return false;
    return true;
}

FPMap fp_identity(const FPModule& m) {
    return {m, m, RingMatrix::identity(m.ring, m.gens)};
}

FPMap fp_compose(const FPMap& g, const FPMap& f) {
    return {f.src, g.tgt, g.phi * f.phi};
}

FPModule base_change(const FPModule& m, const RingMap& f) {
    FPModule out(f.target, m.gens, m.rel.map(f));
    out.grading = m.grading;
    return out;
}

FPMap base_change(const FPMap& m, const RingMap& f) {
    return {base_change(m.src, f), base_change(m.tgt, f), m.phi.map(f)};
}

RingMatrix syzygies(const RingMatrix& a) {
    SNFResult f = snf(a);
    std::size_t m = std::min(a.rows(), a.cols());
    std::vector<std::size_t> freecols;
    for (std::size_t i = 0; i < a.cols(); ++i)
        if (i >= m || f.D.at(i, i).is_zero()) freecols.push_back(i);
    RingMatrix k(a.ring(), a.cols(), freecols.size());
    for (std::size_t j = 0; j < freecols.size(); ++j)
        for (std::size_t i = 0; i < a.cols(); ++i) k.at(i, j) = f.V.at(i, freecols[j]);
    return k;
}

FPMap fp_kernel(const FPMap& f) {
    const FPModule& M = f.src;
    const FPModule& N = f.tgt;
    // (m, z) with phi m + rel_N z = 0; the m-parts generate the kernel.
    RingMatrix big = N.gens > 0 ? RingMatrix::hcat(f.phi, N.rel) : RingMatrix(M.ring, 0, M.gens);
    RingMatrix S = (N.gens > 0) ? syzygies(big) : RingMatrix::identity(M.ring, M.gens);
    RingMatrix Mmat = S.submatrix(0, 0, M.gens, S.cols());
    // Relations: coefficient vectors c with Mmat c inside the relation image of M.
    RingMatrix big2 = M.gens > 0 ? RingMatrix::hcat(Mmat, M.rel) : RingMatrix(M.ring, 0, Mmat.cols());
    RingMatrix S2 = (M.gens > 0) ? syzygies(big2) : RingMatrix(M.ring, Mmat.cols(), 0);
    RingMatrix relK = S2.submatrix(0, 0, Mmat.cols(), S2.cols());
    FPModule K(M.ring, Mmat.cols(), relK);
    return {K, M, Mmat};
}

FPMap fp_cokernel(const FPMap& f) {
    const FPModule& N = f.tgt;
    FPModule C(N.ring, N.gens, RingMatrix::hcat(N.rel, f.phi));
    C.grading = N.grading;
    return {N, C, RingMatrix::identity(N.ring, N.gens)};
}

bool fp_is_iso(const FPMap& f) {
    return fp_kernel(f).src.is_zero_module() && fp_cokernel(f).tgt.is_zero_module();
}

namespace {

// Monomial multiples of the columns of `relmat` whose support can intersect the
// window [out.lo..], used to span the relation image inside a window slice.
void relation_image_columns(const RingMatrix& relmat, const WinSpace& out, long margin,
                            std::vector<QMat>& cols) {
    if (relmat.cols() == 0 || out.exps.empty()) return;
    long outlo = out.exps.front(), outhi = out.exps.back();
    for (std::size_t j = 0; j < relmat.cols(); ++j) {
        long lo = 0, hi = 0;
        bool any = false;
        for (std::size_t i = 0; i < relmat.rows(); ++i) {
            const auto& cs = relmat.at(i, j).coeffs();
            if (cs.empty()) continue;
            long l = cs.begin()->first, h = cs.rbegin()->first;
            if (!any) {
                lo = l;
                hi = h;
                any = true;
            } else {
                lo = std::min(lo, l);
                hi = std::max(hi, h);
            }
        }
        if (!any) continue;
        for (long d = outlo - hi - margin; d <= outhi - lo + margin; ++d) {
            if (!relmat.ring().admits_exponent(d)) continue;
            RingMatrix v(relmat.ring(), relmat.rows(), 1);
            bool legal = true;
            for (std::size_t i = 0; i < relmat.rows() && legal; ++i) {
                RingElement e(relmat.ring());
                for (const auto& [ex, c] : relmat.at(i, j).coeffs()) {
                    if (!relmat.ring().admits_exponent(ex + d)) {
                        legal = false;
                        break;
                    }
                    e.set(ex + d, c);
                }
                v.at(i, 0) = e;
            }
            if (!legal) continue;
            bool fits = true;
            QMat coords = out.from_ring(v, &fits);
            if (!fits) continue; // support sticks out of the slice; skip
            cols.push_back(coords);
        }
    }
}

QMat cols_to_mat(std::size_t dim, const std::vector<QMat>& cols) {
    QMat m(dim, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < dim; ++i) m.at(i, j) = cols[j].at(i, 0);
    return m;
}

} // namespace

std::vector<FPMap> fp_hom(const FPModule& M, const FPModule& N, std::optional<ExpWindow> window) {
    const RingSpec& R = M.ring;
    if (!(R == N.ring)) throw Error(ErrorKind::Internal, "fp_hom across different rings");
    if (M.gens == 0 || N.is_zero_module()) return {};

    ExpWindow w{0, 0};
    if (window) {
        w = *window;
    } else if (R.kind == RingSpec::Kind::Field) {
        w = {0, 0};
    } else {
        auto dm = M.qdim();
        auto dn = N.qdim();
        if (!dm || !dn)
            throw Error(ErrorKind::WindowRequired,
                        "hom space is infinite-dimensional over Q; supply a degree window");
        long b = static_cast<long>(*dm + *dn) + 1;
        w = {-b, b};
    }

    // phi flattened: component j*N.gens + i <-> phi(i, j) = coefficient of
    // target generator i in the image of source generator j.
    WinSpace U(R, N.gens * M.gens, w);
    if (U.dim() == 0) return {};

    long margin = 2;
    for (std::size_t i = 0; i < N.rel.rows(); ++i)
        for (std::size_t j = 0; j < N.rel.cols(); ++j)
            margin = std::max(margin, N.rel.at(i, j).norm() + 2);

    // Constraints: for every source relation column rho, phi * rho lies in the
    // relation image of N. Unknowns: phi plus one multiplier block per rho.
    struct Block {
        QMat C;  // outdim x U.dim
        QMat G;  // outdim x zdim
    };
    std::vector<Block> blocks;
    for (std::size_t rhoi = 0; rhoi < M.rel.cols(); ++rhoi) {
        RingMatrix rho = M.rel.column(rhoi);
        long rlo = 0, rhi = 0;
        bool any = false;
        for (std::size_t i = 0; i < rho.rows(); ++i) {
            const auto& cs = rho.at(i, 0).coeffs();
            if (cs.empty()) continue;
            long l = cs.begin()->first, h = cs.rbegin()->first;
            if (!any) {
                rlo = l;
                rhi = h;
                any = true;
            } else {
                rlo = std::min(rlo, l);
                rhi = std::max(rhi, h);
            }
        }
        if (!any) continue;
        WinSpace out(R, N.gens, ExpWindow{w.lo + rlo - margin, w.hi + rhi + margin});
        // C: phi coords -> coords of phi * rho.
        QMat C(out.dim(), U.dim());
        for (std::size_t col = 0; col < U.dim(); ++col) {
            std::size_t comp = col / U.exps.size();
            long e = U.exps[col % U.exps.size()];
            std::size_t i = comp % N.gens, j = comp / N.gens;
            // phi(i,j) = x^e contributes x^e * rho_j to output component i.
            for (const auto& [ex, cq] : rho.at(j, 0).coeffs()) {
                long oe = ex + e;
                for (std::size_t k = 0; k < out.exps.size(); ++k)
                    if (out.exps[k] == oe) {
                        C.at(out.index(i, k), col) += cq;
                        break;
                    }
            }
        }
        std::vector<QMat> gcols;
        relation_image_columns(N.rel, out, margin, gcols);
        blocks.push_back({C, cols_to_mat(out.dim(), gcols)});
    }

    // Solve the stacked system [C_1; C_2; ...] phi = [G_1 z_1; ...] by moving
    // everything to one kernel computation.
    std::size_t zdim = 0, rows = 0;
    for (const auto& b : blocks) {
        zdim += b.G.cols();
        rows += b.C.rows();
    }
    QMat sys(rows, U.dim() + zdim);
    std::size_t roff = 0, zoff = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.C.rows(); ++i) {
            for (std::size_t j = 0; j < U.dim(); ++j) sys.at(roff + i, j) = b.C.at(i, j);
            for (std::size_t j = 0; j < b.G.cols(); ++j)
                sys.at(roff + i, U.dim() + zoff + j) = -b.G.at(i, j);
        }
        roff += b.C.rows();
        zoff += b.G.cols();
    }
    QMat ker = sys.kernel();
    QMat sol(U.dim(), ker.cols());
    for (std::size_t j = 0; j < ker.cols(); ++j)
        for (std::size_t i = 0; i < U.dim(); ++i) sol.at(i, j) = ker.at(i, j);
    if (blocks.empty()) sol = QMat::identity(U.dim());

    // Null maps: phi whose columns already lie in the relation image of N.
    std::vector<QMat> nullcols;
    {
        WinSpace colspace(R, N.gens, w);
        std::vector<QMat> base;
        relation_image_columns(N.rel, colspace, margin, base);
        for (std::size_t j = 0; j < M.gens; ++j)
            for (const auto& bc : base) {
                QMat v(U.dim(), 1);
                for (std::size_t comp = 0; comp < N.gens; ++comp)
                    for (std::size_t k = 0; k < colspace.exps.size(); ++k)
                        v.at(U.index(j * N.gens + comp, k), 0) =
                            bc.at(colspace.index(comp, k), 0);
                nullcols.push_back(v);
            }
    }
    QMat Zm = cols_to_mat(U.dim(), nullcols);
    QMat q = Zm.cols() ? Zm.quotient_map() : QMat::identity(U.dim());

    // Representatives: solution columns whose classes are independent mod nulls.
    QMat classes = q * sol;
    QMat rr = classes;
    auto pivots = rr.rref();
    std::vector<FPMap> out;
    for (auto p : pivots) {
        QMat coords = sol.column(p);
        RingMatrix phi(R, N.gens, M.gens);
        for (std::size_t comp = 0; comp < U.n; ++comp) {
            std::size_t i = comp % N.gens, j = comp / N.gens;
            for (std::size_t k = 0; k < U.exps.size(); ++k) {
                const Q& cq = coords.at(U.index(comp, k), 0);
                if (cq != 0) phi.at(i, j).set(U.exps[k], phi.at(i, j).coeff(U.exps[k]) + cq);
            }
        }
        out.push_back(FPMap{M, N, phi});
    }
    return out;
}


FPModule fp_tensor(const FPModule& m, const FPModule& n) {
    if (!(m.ring == n.ring))
        throw Error(ErrorKind::Internal, "fp_tensor: mismatched rings");
    RingMatrix rel = RingMatrix::hcat(ring_kron(m.rel, RingMatrix::identity(n.ring, n.gens)),
                                      ring_kron(RingMatrix::identity(m.ring, m.gens), n.rel));
    FPModule out(m.ring, m.gens * n.gens, std::move(rel));
    if (m.grading && n.grading) {
        std::vector<long> g;
        for (std::size_t i = 0; i < m.gens; ++i)
            for (std::size_t j = 0; j < n.gens; ++j)
                g.push_back((*m.grading)[i] + (*n.grading)[j]);
        out.grading = std::move(g);
    }
    return out;
}

} // namespace qcoh
