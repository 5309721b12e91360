#pragma once

#include "matrix.hpp"

namespace sseforge {

// U*M*V = D with U, V unimodular and D diagonal with a divisibility chain.
template <typename R>
struct SmithForm {
    Mat<R> U, D, V;
};

namespace detail {

template <typename R>
void smith_row_op(Mat<R>& d, Mat<R>& u, int dst, int src, const typename R::elem& f) {
    // row dst -= f * row src, mirrored in u
    const R& ring = d.ring;
    for (int j = 0; j < d.cols; ++j) d.at(dst, j) = ring.sub(d.at(dst, j), ring.mul(f, d.at(src, j)));
    for (int j = 0; j < u.cols; ++j) u.at(dst, j) = ring.sub(u.at(dst, j), ring.mul(f, u.at(src, j)));
}

template <typename R>
void smith_col_op(Mat<R>& d, Mat<R>& v, int dst, int src, const typename R::elem& f) {
    const R& ring = d.ring;
    for (int i = 0; i < d.rows; ++i) d.at(i, dst) = ring.sub(d.at(i, dst), ring.mul(f, d.at(i, src)));
    for (int i = 0; i < v.rows; ++i) v.at(i, dst) = ring.sub(v.at(i, dst), ring.mul(f, v.at(i, src)));
}

} // namespace detail

// Smith normal form over a euclidean ring. Diagonal entries are normalized
// (nonnegative over Z, 1 over fields) and satisfy d_i | d_{i+1}.
template <typename R>
SmithForm<R> smith_normal_form(const Mat<R>& m) {
    const R& ring = m.ring;
    require(ring.euclidean(), "smith_normal_form: non-euclidean ring");
    Mat<R> d = m;
    Mat<R> u = mat_identity(ring, m.rows);
    Mat<R> v = mat_identity(ring, m.cols);
    const int steps = std::min(m.rows, m.cols);

    for (int t = 0; t < steps; ++t) {
        // Pivot: entry of least euclidean norm in the remaining block.
        int pr = -1, pc = -1;
        bigint best = 0;
        for (int i = t; i < d.rows; ++i)
            for (int j = t; j < d.cols; ++j) {
                if (ring.is_zero(d.at(i, j))) continue;
                bigint nrm = ring.euclid_norm(d.at(i, j));
                if (pr < 0 || nrm < best) { pr = i; pc = j; best = nrm; }
            }
        if (pr < 0) break;
        if (pr != t)
            for (int j = 0; j < d.cols; ++j) std::swap(d.at(t, j), d.at(pr, j));
        if (pr != t)
            for (int j = 0; j < u.cols; ++j) std::swap(u.at(t, j), u.at(pr, j));
        if (pc != t)
            for (int i = 0; i < d.rows; ++i) std::swap(d.at(i, t), d.at(i, pc));
        if (pc != t)
            for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, t), v.at(i, pc));

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < d.rows; ++i) {
                if (ring.is_zero(d.at(i, t))) continue;
                auto [q, r] = ring.divmod(d.at(i, t), d.at(t, t));
                detail::smith_row_op(d, u, i, t, q);
                if (!ring.is_zero(r)) {
                    // Remainder has smaller norm; promote it to pivot.
                    for (int j = 0; j < d.cols; ++j) std::swap(d.at(t, j), d.at(i, j));
                    for (int j = 0; j < u.cols; ++j) std::swap(u.at(t, j), u.at(i, j));
                    dirty = true;
                }
            }
            for (int j = t + 1; j < d.cols; ++j) {
                if (ring.is_zero(d.at(t, j))) continue;
                auto [q, r] = ring.divmod(d.at(t, j), d.at(t, t));
                detail::smith_col_op(d, v, j, t, q);
                if (!ring.is_zero(r)) {
                    for (int i = 0; i < d.rows; ++i) std::swap(d.at(i, t), d.at(i, j));
                    for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, t), v.at(i, j));
                    dirty = true;
                }
            }
            if (dirty) continue;
            // Pivot must divide every remaining entry for the chain d_i | d_{i+1}.
            for (int i = t + 1; i < d.rows && !dirty; ++i)
                for (int j = t + 1; j < d.cols && !dirty; ++j) {
                    auto [q, r] = ring.divmod(d.at(i, j), d.at(t, t));
                    (void)q;
                    if (!ring.is_zero(r)) {
                        // row t += row i, then restart reduction
                        detail::smith_row_op(d, u, t, i, ring.neg(ring.one()));
                        dirty = true;
                    }
                }
        }
    }

    // Normalize diagonal units (sign over Z, scale over fields) through U.
    for (int t = 0; t < steps; ++t) {
        auto c = ring.canon_unit(d.at(t, t));
        if (!ring.eq(c, ring.one())) {
            for (int j = 0; j < d.cols; ++j) d.at(t, j) = ring.mul(c, d.at(t, j));
            for (int j = 0; j < u.cols; ++j) u.at(t, j) = ring.mul(c, u.at(t, j));
        }
    }
    return {std::move(u), std::move(d), std::move(v)};
}

template <typename R>
std::vector<typename R::elem> smith_diagonal(const Mat<R>& m) {
    auto s = smith_normal_form(m);
    std::vector<typename R::elem> out;
    for (int i = 0; i < std::min(m.rows, m.cols); ++i) out.push_back(s.D.at(i, i));
    return out;
}

// ---------------------------------------------------------------------------
// Integer lattice utilities backing the nilpotent triangularization.

// Columns of the result form a basis of { x in Z^n : a*x = 0 }. Such a kernel
// is automatically saturated.
inline Mat<ZRing> integer_kernel_basis(const Mat<ZRing>& a) {
    auto s = smith_normal_form(a);
    std::vector<int> zero_cols;
    const int k = std::min(a.rows, a.cols);
    for (int j = 0; j < a.cols; ++j)
        if (j >= k || s.D.at(j, j) == 0) zero_cols.push_back(j);
    Mat<ZRing> out(a.ring, a.cols, static_cast<int>(zero_cols.size()));
    for (size_t c = 0; c < zero_cols.size(); ++c)
        for (int i = 0; i < a.cols; ++i) out.at(i, static_cast<int>(c)) = s.V.at(i, zero_cols[c]);
    return out;
}

// Integer solution X of S*X = P, where the columns of S are a basis of a
// lattice containing every column of P.
inline Mat<ZRing> integer_solve(const Mat<ZRing>& s, const Mat<ZRing>& p) {
    auto f = smith_normal_form(s);
    // S = U^-1 D V^-1, so X = V * D^+ * U * P with exact divisions.
    Mat<ZRing> up = mat_mul(f.U, p);
    const int k = std::min(s.rows, s.cols);
    Mat<ZRing> y(s.ring, s.cols, p.cols);
    for (int i = 0; i < s.rows; ++i)
        for (int j = 0; j < p.cols; ++j) {
            if (i < k && f.D.at(i, i) != 0)
                y.at(i, j) = s.ring.exact_div(up.at(i, j), f.D.at(i, i));
            else
                require(up.at(i, j) == 0, "integer_solve: no solution");
        }
    return mat_mul(f.V, y);
}

// Complete a matrix whose columns are a basis of a saturated sublattice of
// Z^n to a unimodular n x n matrix (the given columns come first).
inline Mat<ZRing> unimodular_completion(const Mat<ZRing>& c) {
    const int n = c.rows, r = c.cols;
    require(r <= n, "unimodular_completion: too many columns");
    auto f = smith_normal_form(c);
    for (int i = 0; i < r; ++i)
        require(f.D.at(i, i) == 1, "unimodular_completion: columns not saturated");
    // c = U^-1 [I;0] V^-1; take W = U^-1 [[V^-1,0],[0,I]].
    Mat<ZRing> uinv = mat_inverse(f.U);
    Mat<ZRing> vinv = mat_inverse(f.V);
    Mat<ZRing> w(c.ring, n, n);
    mat_paste(w, mat_mul(mat_submatrix(uinv, 0, 0, n, r), vinv), 0, 0);
    mat_paste(w, mat_submatrix(uinv, 0, r, n, n - r), 0, r);
    return w;
}

inline bool is_strictly_upper(const Mat<ZRing>& a) {
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j <= i && j < a.cols; ++j)
            if (a.at(i, j) != 0) return false;
    return true;
}

// Result of the integral strict triangularization attempt.
struct SaturationResult {
    bool nilpotent = false;
    Mat<ZRing> P; // unimodular; P*N*P^-1 strictly upper triangular
};

// Build a unimodular change of basis strictly triangularizing a nilpotent
// integer matrix, via the saturated kernel filtration
// ker N <= ker N^2 <= ... <= Z^n.
inline SaturationResult kernel_saturation_basis(const Mat<ZRing>& n) {
    require(n.square(), "kernel_saturation_basis: non-square");
    SaturationResult res;
    if (!mat_is_zero(mat_pow(n, n.rows))) return res; // not nilpotent
    res.nilpotent = true;
    if (is_strictly_upper(n)) {
        res.P = mat_identity(n.ring, n.rows);
        return res;
    }
    const int dim = n.rows;
    Mat<ZRing> flag(n.ring, dim, 0); // columns: basis adapted to the filtration
    Mat<ZRing> npow = n;
    while (flag.cols < dim) {
        Mat<ZRing> ker = integer_kernel_basis(npow);
        if (flag.cols == 0) {
            flag = ker;
        } else {
            // Express the current flag in kernel coordinates and extend.
            Mat<ZRing> c = integer_solve(ker, flag);
            Mat<ZRing> w = unimodular_completion(c);
            Mat<ZRing> ext = mat_mul(ker, mat_submatrix(w, 0, c.cols, w.rows, w.cols - c.cols));
            Mat<ZRing> next(n.ring, dim, ker.cols);
            mat_paste(next, flag, 0, 0);
            mat_paste(next, ext, 0, flag.cols);
            flag = next;
        }
        npow = mat_mul(npow, n);
    }
    Mat<ZRing> q = flag;
    require(abs(mat_det(q)) == 1, "kernel_saturation_basis: completion not unimodular");
    res.P = mat_inverse(q);
    require(is_strictly_upper(mat_mul(mat_mul(res.P, n), q)),
            "kernel_saturation_basis: triangularization failed");
    return res;
}

} // namespace sseforge
