#pragma once

#include "poly.hpp"

#include <vector>

namespace sseforge {

// R[t] presented through the same interface as the scalar rings, so the
// matrix code below works unchanged for polynomial matrices.
template <typename R>
struct PolyRing {
    using elem = Poly<R>;

    R base;

    PolyRing() = default;
    explicit PolyRing(R b) : base(std::move(b)) {}

    bool same(const PolyRing& o) const { return base.same(o.base); }
    std::string name() const { return base.name() + "[t]"; }

    bool euclidean() const { return false; }
    bool integral_domain() const { return base.integral_domain(); }

    elem zero() const { return poly_zero(base); }
    elem one() const { return poly_one(base); }
    elem from_int(long v) const { return poly_const(base, base.from_int(v)); }

    elem add(const elem& a, const elem& b) const { return poly_add(a, b); }
    elem sub(const elem& a, const elem& b) const { return poly_sub(a, b); }
    elem mul(const elem& a, const elem& b) const { return poly_mul(a, b); }
    elem neg(const elem& a) const { return poly_neg(a); }

    bool is_zero(const elem& a) const { return a.is_zero(); }
    bool eq(const elem& a, const elem& b) const { return poly_eq(a, b); }
    bool is_unit(const elem& a) const { return a.degree() == 0 && base.is_unit(a.coeff(0)); }

    elem inv_unit(const elem& a) const {
        require(is_unit(a), "PolyRing: not a unit");
        return poly_const(base, base.inv_unit(a.coeff(0)));
    }

    elem exact_div(const elem& a, const elem& b) const { return poly_exact_div(a, b); }

    std::string to_string(const elem& a) const { return poly_to_string(a); }
};

// Dense matrix over an exact ring, row-major. The 0x0 matrix is legal and is
// the identity for direct sums.
template <typename Ring>
struct Mat {
    using elem = typename Ring::elem;

    Ring ring;
    int rows = 0;
    int cols = 0;
    std::vector<elem> e;

    Mat() = default;
    explicit Mat(Ring r) : ring(std::move(r)) {}
    Mat(Ring r, int rr, int cc)
        : ring(std::move(r)), rows(rr), cols(cc),
          e(static_cast<size_t>(rr) * static_cast<size_t>(cc), ring.zero()) {
        require(rr >= 0 && cc >= 0, "Mat: negative dimensions");
    }

    elem& at(int r, int c) {
        require(r >= 0 && r < rows && c >= 0 && c < cols, "Mat: index out of range");
        return e[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
    }
    const elem& at(int r, int c) const {
        require(r >= 0 && r < rows && c >= 0 && c < cols, "Mat: index out of range");
        return e[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
    }

    bool square() const { return rows == cols; }
    bool empty() const { return rows == 0 && cols == 0; }
};

template <typename Ring>
Mat<Ring> mat_zero(const Ring& ring, int r, int c) { return Mat<Ring>(ring, r, c); }

template <typename Ring>
Mat<Ring> mat_identity(const Ring& ring, int n) {
    Mat<Ring> m(ring, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ring.one();
    return m;
}

template <typename Ring>
bool mat_eq(const Mat<Ring>& a, const Mat<Ring>& b) {
    require(a.ring.same(b.ring), "mat_eq: ring mismatch");
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (size_t i = 0; i < a.e.size(); ++i)
        if (!a.ring.eq(a.e[i], b.e[i])) return false;
    return true;
}

template <typename Ring>
bool mat_is_zero(const Mat<Ring>& a) {
    for (const auto& x : a.e)
        if (!a.ring.is_zero(x)) return false;
    return true;
}

template <typename Ring>
Mat<Ring> mat_add(const Mat<Ring>& a, const Mat<Ring>& b) {
    require(a.ring.same(b.ring), "mat_add: ring mismatch");
    require(a.rows == b.rows && a.cols == b.cols, "mat_add: dimension mismatch");
    Mat<Ring> m(a.ring, a.rows, a.cols);
    for (size_t i = 0; i < a.e.size(); ++i) m.e[i] = a.ring.add(a.e[i], b.e[i]);
    return m;
}

template <typename Ring>
Mat<Ring> mat_sub(const Mat<Ring>& a, const Mat<Ring>& b) {
    require(a.ring.same(b.ring), "mat_sub: ring mismatch");
    require(a.rows == b.rows && a.cols == b.cols, "mat_sub: dimension mismatch");
    Mat<Ring> m(a.ring, a.rows, a.cols);
    for (size_t i = 0; i < a.e.size(); ++i) m.e[i] = a.ring.sub(a.e[i], b.e[i]);
    return m;
}

template <typename Ring>
Mat<Ring> mat_neg(const Mat<Ring>& a) {
    Mat<Ring> m(a.ring, a.rows, a.cols);
    for (size_t i = 0; i < a.e.size(); ++i) m.e[i] = a.ring.neg(a.e[i]);
    return m;
}

template <typename Ring>
Mat<Ring> mat_mul(const Mat<Ring>& a, const Mat<Ring>& b) {
    require(a.ring.same(b.ring), "mat_mul: ring mismatch");
    require(a.cols == b.rows, "mat_mul: dimension mismatch");
    Mat<Ring> m(a.ring, a.rows, b.cols);
    const size_t bc = static_cast<size_t>(b.cols);
    for (int i = 0; i < a.rows; ++i) {
        auto* out = m.e.data() + static_cast<size_t>(i) * bc;
        const auto* arow = a.e.data() + static_cast<size_t>(i) * static_cast<size_t>(a.cols);
        for (int k = 0; k < a.cols; ++k) {
            const auto& aik = arow[k];
            if (a.ring.is_zero(aik)) continue;
            const auto* brow = b.e.data() + static_cast<size_t>(k) * bc;
            for (size_t j = 0; j < bc; ++j) {
                if (a.ring.is_zero(brow[j])) continue;
                out[j] = a.ring.add(out[j], a.ring.mul(aik, brow[j]));
            }
        }
    }
    return m;
}

template <typename Ring>
Mat<Ring> mat_scale(const Mat<Ring>& a, const typename Ring::elem& s) {
    Mat<Ring> m(a.ring, a.rows, a.cols);
    for (size_t i = 0; i < a.e.size(); ++i) m.e[i] = a.ring.mul(s, a.e[i]);
    return m;
}

template <typename Ring>
Mat<Ring> mat_transpose(const Mat<Ring>& a) {
    Mat<Ring> m(a.ring, a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) m.at(j, i) = a.at(i, j);
    return m;
}

template <typename Ring>
Mat<Ring> mat_pow(const Mat<Ring>& a, int k) {
    require(a.square(), "mat_pow: non-square");
    require(k >= 0, "mat_pow: negative power");
    Mat<Ring> acc = mat_identity(a.ring, a.rows);
    for (int i = 0; i < k; ++i) acc = mat_mul(acc, a);
    return acc;
}

template <typename Ring>
Mat<Ring> mat_direct_sum(const Mat<Ring>& a, const Mat<Ring>& b) {
    require(a.ring.same(b.ring), "mat_direct_sum: ring mismatch");
    Mat<Ring> m(a.ring, a.rows + b.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) m.at(a.rows + i, a.cols + j) = b.at(i, j);
    return m;
}

template <typename Ring>
Mat<Ring> mat_submatrix(const Mat<Ring>& a, int r0, int c0, int nr, int nc) {
    require(r0 >= 0 && c0 >= 0 && r0 + nr <= a.rows && c0 + nc <= a.cols,
            "mat_submatrix: out of range");
    Mat<Ring> m(a.ring, nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) m.at(i, j) = a.at(r0 + i, c0 + j);
    return m;
}

// Copy src into dst with top-left corner at (r0, c0).
template <typename Ring>
void mat_paste(Mat<Ring>& dst, const Mat<Ring>& src, int r0, int c0) {
    require(r0 + src.rows <= dst.rows && c0 + src.cols <= dst.cols, "mat_paste: out of range");
    for (int i = 0; i < src.rows; ++i)
        for (int j = 0; j < src.cols; ++j) dst.at(r0 + i, c0 + j) = src.at(i, j);
}

// Pad with identity (st1 flavor) or zeros to an n x n matrix.
template <typename Ring>
Mat<Ring> mat_pad_identity(const Mat<Ring>& a, int n) {
    require(a.square() && n >= a.rows, "mat_pad_identity: bad size");
    Mat<Ring> m = mat_identity(a.ring, n);
    mat_paste(m, a, 0, 0);
    return m;
}

template <typename Ring>
Mat<Ring> mat_pad_zero(const Mat<Ring>& a, int nr, int nc) {
    require(nr >= a.rows && nc >= a.cols, "mat_pad_zero: bad size");
    Mat<Ring> m(a.ring, nr, nc);
    mat_paste(m, a, 0, 0);
    return m;
}

// ---------------------------------------------------------------------------
// Determinants.

namespace detail {

template <typename Ring>
typename Ring::elem det_cofactor(const Mat<Ring>& a) {
    const int n = a.rows;
    if (n == 0) return a.ring.one();
    if (n == 1) return a.at(0, 0);
    typename Ring::elem acc = a.ring.zero();
    for (int j = 0; j < n; ++j) {
        if (a.ring.is_zero(a.at(0, j))) continue;
        Mat<Ring> minor(a.ring, n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            for (int c = 0, cc = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = a.at(i, c);
            }
        }
        auto term = a.ring.mul(a.at(0, j), det_cofactor(minor));
        acc = (j % 2 == 0) ? a.ring.add(acc, term) : a.ring.sub(acc, term);
    }
    return acc;
}

// Fraction-free elimination; valid over integral domains.
template <typename Ring>
typename Ring::elem det_bareiss(Mat<Ring> a) {
    const Ring& ring = a.ring;
    const int n = a.rows;
    typename Ring::elem prev = ring.one();
    bool negate = false;
    for (int k = 0; k < n - 1; ++k) {
        if (ring.is_zero(a.at(k, k))) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (!ring.is_zero(a.at(i, k))) { p = i; break; }
            if (p < 0) return ring.zero();
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                auto num = ring.sub(ring.mul(a.at(i, j), a.at(k, k)),
                                    ring.mul(a.at(i, k), a.at(k, j)));
                a.at(i, j) = ring.exact_div(num, prev);
            }
            a.at(i, k) = ring.zero();
        }
        prev = a.at(k, k);
    }
    auto d = a.at(n - 1, n - 1);
    return negate ? ring.neg(d) : d;
}

// Berkowitz: division-free, works over any commutative ring. Returns the
// characteristic-polynomial coefficient vector c of det(xI - A), c[0] the
// leading 1, so det(A) = (-1)^n * c[n].
template <typename Ring>
std::vector<typename Ring::elem> berkowitz_charpoly(const Mat<Ring>& a) {
    const Ring& ring = a.ring;
    const int n = a.rows;
    std::vector<typename Ring::elem> c{ring.one()};
    for (int k = 1; k <= n; ++k) {
        // Toeplitz column for principal submatrix of size k.
        const int m = k - 1;
        Mat<Ring> sub = mat_submatrix(a, 0, 0, m, m);
        Mat<Ring> row(ring, 1, m), col(ring, m, 1);
        for (int j = 0; j < m; ++j) row.at(0, j) = a.at(m, j);
        for (int i = 0; i < m; ++i) col.at(i, 0) = a.at(i, m);
        std::vector<typename Ring::elem> t(static_cast<size_t>(k) + 1, ring.zero());
        t[0] = ring.one();
        t[1] = ring.neg(a.at(m, m));
        Mat<Ring> acc = col;
        for (int i = 2; i <= k; ++i) {
            typename Ring::elem dot = ring.zero();
            for (int j = 0; j < m; ++j) dot = ring.add(dot, ring.mul(row.at(0, j), acc.at(j, 0)));
            t[static_cast<size_t>(i)] = ring.neg(dot);
            if (i < k) acc = mat_mul(sub, acc);
        }
        std::vector<typename Ring::elem> next(static_cast<size_t>(k) + 1, ring.zero());
        for (size_t i = 0; i < t.size(); ++i)
            for (size_t j = 0; j < c.size(); ++j)
                if (i + j <= static_cast<size_t>(k))
                    next[i + j] = ring.add(next[i + j], ring.mul(t[i], c[j]));
        c = std::move(next);
    }
    return c;
}

} // namespace detail

// Exact determinant: cofactor expansion in small dimensions, fraction-free
// elimination over integral domains, Berkowitz elsewhere.
template <typename Ring>
typename Ring::elem mat_det(const Mat<Ring>& a) {
    require(a.square(), "mat_det: non-square");
    if (a.rows <= 4) return detail::det_cofactor(a);
    if (a.ring.integral_domain()) return detail::det_bareiss(a);
    auto c = detail::berkowitz_charpoly(a);
    auto d = c.back();
    return (a.rows % 2 == 0) ? d : a.ring.neg(d);
}

// ---------------------------------------------------------------------------
// Inverses. Gauss-Jordan needs division, so this is for fields; integer
// matrices are inverted through the rationals and checked for integrality.

template <typename Ring>
Mat<Ring> mat_inverse_field(const Mat<Ring>& a) {
    require(a.square(), "mat_inverse: non-square");
    const Ring& ring = a.ring;
    const int n = a.rows;
    Mat<Ring> m = a, inv = mat_identity(ring, n);
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (!ring.is_zero(m.at(i, k)) && ring.is_unit(m.at(i, k))) { p = i; break; }
        require(p >= 0, "mat_inverse: not invertible");
        if (p != k)
            for (int j = 0; j < n; ++j) {
                std::swap(m.at(k, j), m.at(p, j));
                std::swap(inv.at(k, j), inv.at(p, j));
            }
        auto piv = ring.inv_unit(m.at(k, k));
        for (int j = 0; j < n; ++j) {
            m.at(k, j) = ring.mul(piv, m.at(k, j));
            inv.at(k, j) = ring.mul(piv, inv.at(k, j));
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || ring.is_zero(m.at(i, k))) continue;
            auto f = m.at(i, k);
            for (int j = 0; j < n; ++j) {
                m.at(i, j) = ring.sub(m.at(i, j), ring.mul(f, m.at(k, j)));
                inv.at(i, j) = ring.sub(inv.at(i, j), ring.mul(f, inv.at(k, j)));
            }
        }
    }
    return inv;
}

inline Mat<QRing> mat_z_to_q(const Mat<ZRing>& a) {
    Mat<QRing> m(QRing{}, a.rows, a.cols);
    for (size_t i = 0; i < a.e.size(); ++i) m.e[i] = bigrat(a.e[i]);
    return m;
}

inline Mat<ZRing> mat_q_to_z(const Mat<QRing>& a) {
    Mat<ZRing> m(ZRing{}, a.rows, a.cols);
    for (size_t i = 0; i < a.e.size(); ++i) {
        require(denominator(a.e[i]) == 1, "mat_q_to_z: non-integer entry");
        m.e[i] = numerator(a.e[i]);
    }
    return m;
}

inline Mat<ZRing> mat_inverse(const Mat<ZRing>& a) {
    return mat_q_to_z(mat_inverse_field(mat_z_to_q(a)));
}

inline Mat<QRing> mat_inverse(const Mat<QRing>& a) { return mat_inverse_field(a); }
inline Mat<ZModRing> mat_inverse(const Mat<ZModRing>& a) { return mat_inverse_field(a); }

template <typename Ring>
int mat_rank_field(const Mat<Ring>& a) {
    Mat<Ring> m = a;
    const Ring& ring = m.ring;
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int p = -1;
        for (int i = rank; i < m.rows; ++i)
            if (!ring.is_zero(m.at(i, c))) { p = i; break; }
        if (p < 0) continue;
        if (p != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(rank, j), m.at(p, j));
        auto piv = ring.inv_unit(m.at(rank, c));
        for (int i = rank + 1; i < m.rows; ++i) {
            if (ring.is_zero(m.at(i, c))) continue;
            auto f = ring.mul(m.at(i, c), piv);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = ring.sub(m.at(i, j), ring.mul(f, m.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Polynomial matrices.

template <typename R>
using PolyMat = Mat<PolyRing<R>>;

template <typename R>
PolyMat<R> mat_to_polymat(const Mat<R>& a) {
    PolyRing<R> pr(a.ring);
    PolyMat<R> m(pr, a.rows, a.cols);
    for (size_t i = 0; i < a.e.size(); ++i)
        if (!a.ring.is_zero(a.e[i])) m.e[i] = poly_const(a.ring, a.e[i]);
    return m;
}

// Coefficient matrix of t^i in the decomposition A = sum_i t^i A_i.
template <typename R>
Mat<R> polymat_coeff(const PolyMat<R>& a, int i) {
    Mat<R> m(a.ring.base, a.rows, a.cols);
    for (size_t k = 0; k < a.e.size(); ++k) m.e[k] = a.e[k].coeff(i);
    return m;
}

template <typename R>
int polymat_degree(const PolyMat<R>& a) {
    int d = -1;
    for (const auto& p : a.e) d = std::max(d, p.degree());
    return d;
}

template <typename R>
Mat<R> polymat_eval_zero(const PolyMat<R>& a) { return polymat_coeff(a, 0); }

template <typename R>
bool polymat_in_t_ideal(const PolyMat<R>& a) {
    for (const auto& p : a.e)
        if (!a.ring.base.is_zero(p.coeff(0))) return false;
    return true;
}

// I - t*A for a scalar square matrix A.
template <typename R>
PolyMat<R> pencil_of(const Mat<R>& a) {
    require(a.square(), "pencil_of: non-square");
    PolyRing<R> pr(a.ring);
    PolyMat<R> m = mat_identity(pr, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (!a.ring.is_zero(a.at(i, j)))
                m.at(i, j) = poly_sub(m.at(i, j), poly_monomial(a.ring, a.at(i, j), 1));
    return m;
}

// t*A as a polynomial matrix.
template <typename R>
PolyMat<R> polymat_t_times(const Mat<R>& a) {
    PolyRing<R> pr(a.ring);
    PolyMat<R> m(pr, a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j)
            if (!a.ring.is_zero(a.at(i, j))) m.at(i, j) = poly_monomial(a.ring, a.at(i, j), 1);
    return m;
}

// I - A for A over R[t].
template <typename R>
PolyMat<R> identity_minus(const PolyMat<R>& a) {
    require(a.square(), "identity_minus: non-square");
    return mat_sub(mat_identity(a.ring, a.rows), a);
}

template <typename R>
std::string mat_to_string(const Mat<R>& a) {
    std::string s = "[";
    for (int i = 0; i < a.rows; ++i) {
        s += i ? "; " : "";
        for (int j = 0; j < a.cols; ++j) s += (j ? "," : "") + a.ring.to_string(a.at(i, j));
    }
    return s + "]";
}

} // namespace sseforge
