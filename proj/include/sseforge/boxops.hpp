#pragma once

#include "sse.hpp"

#include <optional>

namespace sseforge {

// Shape of the block companion form: k blocks of size n.
struct BoxShape {
    int k = 1;
    int n = 1;
};

template <typename R>
BoxShape box_shape_canonical(const PolyMat<R>& a) {
    return BoxShape{std::max(1, polymat_degree(a)), std::max(1, a.rows)};
}

template <typename R>
PolyMat<R> polymat_pad(const PolyMat<R>& a, int n) {
    require(n >= a.rows && a.square(), "polymat_pad: bad size");
    PolyMat<R> m(a.ring, n, n);
    mat_paste(m, a, 0, 0);
    return m;
}

// Block companion form of A = sum t^i A_i: first block row A_1 ... A_k,
// identity subdiagonal, every block n x n.
template <typename R>
Mat<R> box(const PolyMat<R>& a, BoxShape shape) {
    require(a.square(), "box: input must be square");
    require(shape.k >= 1 && shape.n >= a.rows, "box: shape too small");
    require(polymat_in_t_ideal(a), "box: entries must have zero constant term");
    require(polymat_degree(a) <= shape.k, "box: degree exceeds shape");
    const R& base = a.ring.base;
    const int n = shape.n, k = shape.k;
    Mat<R> m(base, k * n, k * n);
    for (int i = 1; i <= k; ++i)
        mat_paste(m, mat_pad_zero(polymat_coeff(a, i), n, n), 0, (i - 1) * n);
    for (int j = 0; j + 1 < k; ++j)
        mat_paste(m, mat_identity(base, n), (j + 1) * n, j * n);
    return m;
}

// Column variant: first block column A_1 ... A_k, identity superdiagonal.
template <typename R>
Mat<R> box_col(const PolyMat<R>& a, BoxShape shape) {
    return mat_transpose(box(mat_transpose(a), shape));
}

// ---------------------------------------------------------------------------
// Shape changes as verified chains. Enlarging k or n does not change the
// SSE class; these realize that constructively.

// box(a,(k+1,n)) -> box(a,(k,n)): the trailing block column is zero, so peel
// its n columns.
template <typename R>
SseChain<R> box_trim_k_once(const PolyMat<R>& a, BoxShape target) {
    require(polymat_degree(a) <= target.k, "box_trim_k_once: degree too high");
    ChainBuilder<R> b(box(a, BoxShape{target.k + 1, target.n}));
    for (int t = 0; t < target.n; ++t) {
        auto [smaller, pair] = trim_zero_row_col(b.current(), ExtShape::col);
        (void)smaller;
        b.push(pair);
    }
    require(mat_eq(b.current(), box(a, target)), "box_trim_k_once: endpoint mismatch");
    return b.take();
}

template <typename R>
SseChain<R> box_reshape_k(const PolyMat<R>& a, BoxShape from, int to_k) {
    require(polymat_degree(a) <= std::min(from.k, to_k), "box_reshape_k: degree too high");
    ChainBuilder<R> b(box(a, from));
    for (int k = from.k; k > to_k; --k)
        b.append(box_trim_k_once(a, BoxShape{k - 1, from.n}));
    for (int k = from.k; k < to_k; ++k)
        b.append_reversed(box_trim_k_once(a, BoxShape{k, from.n}));
    return b.take();
}

// box(a,(k,n+1)) -> box(a,(k,n)). The enlarged box is permutation-similar to
// box(a,(k,n)) + N_k with N_k the k x k lower shift; reverse the shift to
// strictly upper form and trim it away.
template <typename R>
SseChain<R> box_shrink_n_once(const PolyMat<R>& a, BoxShape target) {
    const R& base = a.ring.base;
    const int k = target.k, n = target.n;
    require(n >= a.rows, "box_shrink_n_once: target too small");
    Mat<R> start = box(a, BoxShape{k, n + 1});
    ChainBuilder<R> b(start);

    // Permutation: old index j*(n+1)+c -> j*n+c for c < n, extras to the tail.
    Mat<R> p(base, k * (n + 1), k * (n + 1));
    for (int j = 0; j < k; ++j) {
        for (int c = 0; c < n; ++c) p.at(j * n + c, j * (n + 1) + c) = base.one();
        p.at(k * n + j, j * (n + 1) + n) = base.one();
    }
    auto [conj, pair] = similarity_move(start, p, mat_transpose(p));
    b.push(pair);
    require(mat_eq(mat_submatrix(conj, 0, 0, k * n, k * n), box(a, target)),
            "box_shrink_n_once: split failed");

    if (k > 1) {
        // Reverse the tail indices so the shift block becomes strictly upper.
        Mat<R> rev(base, k * (n + 1), k * (n + 1));
        for (int i = 0; i < k * n; ++i) rev.at(i, i) = base.one();
        for (int j = 0; j < k; ++j) rev.at(k * n + j, k * n + (k - 1 - j)) = base.one();
        auto [conj2, pair2] = similarity_move(conj, rev, mat_transpose(rev));
        b.push(pair2);
        conj = conj2;
    }
    for (int t = 0; t < k; ++t) {
        auto [smaller, tpair] = trim_zero_row_col(b.current(), ExtShape::row);
        (void)smaller;
        b.push(tpair);
    }
    require(mat_eq(b.current(), box(a, target)), "box_shrink_n_once: endpoint mismatch");
    return b.take();
}

template <typename R>
SseChain<R> box_reshape_n(const PolyMat<R>& a, BoxShape from, int to_n) {
    require(to_n >= a.rows && from.n >= a.rows, "box_reshape_n: too small");
    ChainBuilder<R> b(box(a, from));
    for (int n = from.n; n > to_n; --n)
        b.append(box_shrink_n_once(a, BoxShape{from.k, n - 1}));
    for (int n = from.n; n < to_n; ++n)
        b.append_reversed(box_shrink_n_once(a, BoxShape{from.k, n}));
    return b.take();
}

// ---------------------------------------------------------------------------
// Elementary step results: I - B = E (I - A) or (I - A) E.

template <typename R>
PolyMat<R> elem_left_result(const PolyMat<R>& a, const ElemOp<R>& e) {
    PolyMat<R> em = elem_matrix(e, a.ring, a.rows);
    PolyMat<R> b = identity_minus(mat_mul(em, identity_minus(a)));
    require(polymat_in_t_ideal(b), "elem_left_result: result leaves tR[t]");
    return b;
}

template <typename R>
PolyMat<R> elem_right_result(const PolyMat<R>& a, const ElemOp<R>& e) {
    PolyMat<R> em = elem_matrix(e, a.ring, a.rows);
    PolyMat<R> b = identity_minus(mat_mul(identity_minus(a), em));
    require(polymat_in_t_ideal(b), "elem_right_result: result leaves tR[t]");
    return b;
}

namespace detail {

// The four-stage reduction for a left step E = I + r t e_{12}:
// column splitting B = WM, diagonal refactorization XD, column amalgamation
// YZ, row amalgamation, then trims. Returns the chain
// box(B,(k+1,n)) -> box(A,(k,n)).
template <typename R>
SseChain<R> elem_l1_core(const PolyMat<R>& a, const typename R::elem& r, BoxShape shape) {
    const R& base = a.ring.base;
    const int n = shape.n, k = shape.k, K = k + 1;
    require(n >= 2 && a.rows == n, "elem_l1_core: block size too small");

    ElemOp<R> e(OpSide::left, 1, 2, poly_monomial(base, r, 1));
    PolyMat<R> bpoly = elem_left_result(a, e);
    Mat<R> bbox = box(bpoly, BoxShape{K, n});
    Mat<R> abig = box(a, BoxShape{K, n});

    // u_i = second row of A_i
    std::vector<Mat<R>> acoef(static_cast<size_t>(k) + 1, Mat<R>(base));
    for (int i = 1; i <= k; ++i) acoef[static_cast<size_t>(i)] = mat_pad_zero(polymat_coeff(a, i), n, n);

    const int N = K * n + k * n + 1;
    Mat<R> w(base, K * n, N);
    mat_paste(w, abig, 0, 0);
    for (int i = 1; i <= k; ++i)
        for (int c = 0; c < n; ++c)
            w.at(0, K * n + (i - 1) * n + c) = base.mul(r, acoef[static_cast<size_t>(i)].at(1, c));
    w.at(0, N - 1) = base.neg(r);

    Mat<R> m(base, N, K * n);
    for (int x = 0; x < K * n; ++x) m.at(x, x) = base.one();
    for (int i = 1; i <= k; ++i)
        for (int c = 0; c < n; ++c) m.at(K * n + (i - 1) * n + c, i * n + c) = base.one();
    m.at(N - 1, 1) = base.one();

    require(mat_eq(bbox, mat_mul(w, m)), "elem_l1_core: B-box != W*M");
    ChainBuilder<R> chain(bbox);
    chain.push(EssePair<R>{w, m});
    Mat<R> b1 = chain.current();

    Mat<R> d = mat_identity(base, N);
    for (int i = 1; i <= k; ++i)
        for (int c = 0; c < n; ++c) {
            int idx = K * n + (i - 1) * n + c;
            d.at(idx, idx) = acoef[static_cast<size_t>(i)].at(1, c);
        }
    Mat<R> x = b1;
    for (int i = 1; i <= k; ++i)
        for (int c = 0; c < n; ++c) x.at(0, K * n + (i - 1) * n + c) = r;
    require(mat_eq(b1, mat_mul(x, d)), "elem_l1_core: B1 != X*D");
    chain.push(EssePair<R>{x, d});
    Mat<R> b2 = chain.current();

    Mat<R> y(base, N, K * n + 2);
    mat_paste(y, mat_submatrix(b2, 0, 0, N, K * n), 0, 0);
    y.at(0, K * n) = r;
    for (int rr = 0; rr < N; ++rr) y.at(rr, K * n + 1) = b2.at(rr, N - 1);
    Mat<R> z(base, K * n + 2, N);
    for (int t = 0; t < K * n; ++t) z.at(t, t) = base.one();
    for (int t = 0; t < k * n; ++t) z.at(K * n, K * n + t) = base.one();
    z.at(K * n + 1, N - 1) = base.one();
    require(mat_eq(b2, mat_mul(y, z)), "elem_l1_core: B2 != Y*Z");
    chain.push(EssePair<R>{y, z});
    Mat<R> b3 = chain.current();

    for (int c = 0; c < K * n + 2; ++c)
        require(base.eq(b3.at(K * n, c), b3.at(K * n + 1, c)),
                "elem_l1_core: amalgamation rows differ");
    Mat<R> xr(base, K * n + 2, K * n + 1);
    for (int t = 0; t < K * n + 1; ++t) xr.at(t, t) = base.one();
    xr.at(K * n + 1, K * n) = base.one();
    Mat<R> yr = mat_submatrix(b3, 0, 0, K * n + 1, K * n + 2);
    require(mat_eq(b3, mat_mul(xr, yr)), "elem_l1_core: B3 != Xr*Yr");
    chain.push(EssePair<R>{xr, yr});

    for (int t = 0; t < n + 1; ++t) {
        auto [smaller, pair] = trim_zero_row_col(chain.current(), ExtShape::col);
        (void)smaller;
        chain.push(pair);
    }
    require(mat_eq(chain.current(), box(a, shape)), "elem_l1_core: endpoint mismatch");
    return chain.take();
}

// Similarity of boxes induced by conjugating the polynomial matrix by a
// scalar invertible P: box(P a P^-1, shape) = (+P) box(a, shape) (+P)^-1.
template <typename R>
std::pair<PolyMat<R>, EssePair<R>> box_conjugation_move(const PolyMat<R>& a, const Mat<R>& pscal,
                                                        const Mat<R>& pscal_inv, BoxShape shape) {
    const R& base = a.ring.base;
    Mat<R> pd(base, shape.k * shape.n, shape.k * shape.n);
    Mat<R> pdi(base, shape.k * shape.n, shape.k * shape.n);
    for (int j = 0; j < shape.k; ++j) {
        mat_paste(pd, pscal, j * shape.n, j * shape.n);
        mat_paste(pdi, pscal_inv, j * shape.n, j * shape.n);
    }
    auto [bmat, pair] = similarity_move(box(a, shape), pd, pdi);
    PolyMat<R> pp = mat_to_polymat(pscal);
    PolyMat<R> ppi = mat_to_polymat(pscal_inv);
    PolyMat<R> conj = mat_mul(mat_mul(pp, a), ppi);
    require(mat_eq(bmat, box(conj, shape)), "box_conjugation_move: box mismatch");
    return {conj, pair};
}

template <typename R>
struct StepResult {
    SseChain<R> chain; // box(a, (k, n)) -> box(b, (k + l, n))
    PolyMat<R> b;
};

template <typename R>
StepResult<R> elem_step_left_monomial(const PolyMat<R>& a, int i0, int j0,
                                      const typename R::elem& r, int l, BoxShape shape);

// Bridge box(a) -> box_col(a), declared here, defined after the walkers.
template <typename R>
SseChain<R> companion_bridge(const PolyMat<R>& a, BoxShape shape);

template <typename R>
StepResult<R> elem_step_right_monomial(const PolyMat<R>& a, int i0, int j0,
                                       const typename R::elem& r, int l, BoxShape shape) {
    const R& base = a.ring.base;
    PolyMat<R> apad = polymat_pad(a, shape.n);
    ElemOp<R> e(OpSide::right, i0, j0, poly_monomial(base, r, l));
    PolyMat<R> b = elem_right_result(apad, e);

    PolyMat<R> at = mat_transpose(apad);
    StepResult<R> tstep = elem_step_left_monomial(at, j0, i0, r, l, shape);
    require(mat_eq(mat_transpose(tstep.b), b), "elem_step_right: transpose mismatch");

    ChainBuilder<R> chain(box(apad, shape));
    chain.append(companion_bridge(apad, shape));
    chain.append(chain_transposed(tstep.chain));
    chain.append_reversed(companion_bridge(b, BoxShape{shape.k + l, shape.n}));
    require(mat_eq(chain.current(), box(b, BoxShape{shape.k + l, shape.n})),
            "elem_step_right: endpoint mismatch");
    return {chain.take(), std::move(b)};
}

template <typename R>
StepResult<R> elem_step_left_monomial(const PolyMat<R>& a, int i0, int j0,
                                      const typename R::elem& r, int l, BoxShape shape) {
    const R& base = a.ring.base;
    require(l >= 1, "elem_step_left_monomial: need t-degree >= 1");
    require(std::max(i0, j0) <= shape.n, "elem_step_left_monomial: shape too small");
    ElemOp<R> e(OpSide::left, i0, j0, poly_monomial(base, r, l));
    PolyMat<R> apad = polymat_pad(a, shape.n);
    PolyMat<R> b = elem_left_result(apad, e);
    BoxShape out{shape.k + l, shape.n};

    if (base.is_zero(r)) {
        return {box_reshape_k(apad, shape, out.k), std::move(b)};
    }

    if (l == 1) {
        if (i0 == 1 && j0 == 2) {
            SseChain<R> core = elem_l1_core(apad, r, shape);
            return {chain_reversed(core), std::move(b)};
        }
        // Conjugate by a permutation moving (i0, j0) to (1, 2).
        std::vector<int> sigma(static_cast<size_t>(shape.n), -1);
        sigma[0] = i0 - 1;
        sigma[1] = j0 - 1;
        int next = 0;
        for (size_t c = 2; c < sigma.size(); ++c) {
            while (next == i0 - 1 || next == j0 - 1) ++next;
            sigma[c] = next++;
        }
        Mat<R> p(base, shape.n, shape.n);
        for (int c = 0; c < shape.n; ++c) p.at(sigma[static_cast<size_t>(c)], c) = base.one();
        Mat<R> pt = mat_transpose(p);

        ChainBuilder<R> chain(box(apad, shape));
        auto [atld, mv1] = box_conjugation_move(apad, pt, p, shape);
        chain.push(mv1);
        StepResult<R> inner = elem_step_left_monomial(atld, 1, 2, r, l, shape);
        chain.append(inner.chain);
        auto [bback, mv2] = box_conjugation_move(inner.b, p, pt, out);
        chain.push(mv2);
        require(mat_eq(bback, b), "elem_step_left_monomial: conjugation mismatch");
        return {chain.take(), std::move(b)};
    }

    // l >= 2: E_{ij}(r t^l) = E_{ip}(r t^{l-1}) E_{pj}(t) E_{ip}(-r t^{l-1}) E_{pj}(-t)
    // with p a third index, then recurse. Exact identity: e_ip e_pj = e_ij and
    // e_pj e_ip = 0, so the cross terms cancel.
    int p = 1;
    while (p == i0 || p == j0) ++p;
    require(p <= shape.n, "elem_step_left_monomial: no auxiliary index available");
    const auto one = base.one();
    struct Factor { int i, j; typename R::elem c; int deg; };
    // application order: the rightmost factor of the product acts first
    std::vector<Factor> fs = {
        {p, j0, base.neg(one), 1},
        {i0, p, base.neg(r), l - 1},
        {p, j0, one, 1},
        {i0, p, r, l - 1},
    };
    ChainBuilder<R> chain(box(apad, shape));
    PolyMat<R> cur = apad;
    BoxShape cshape = shape;
    for (const auto& f : fs) {
        StepResult<R> st = elem_step_left_monomial(cur, f.i, f.j, f.c, f.deg, cshape);
        chain.append(st.chain);
        cur = st.b;
        cshape.k += f.deg;
    }
    require(mat_eq(cur, b), "elem_step_left_monomial: commutator mismatch");
    chain.append(box_reshape_k(cur, cshape, out.k));
    return {chain.take(), std::move(b)};
}

// -----------------------------------------------------------------------
// Block amalgamations and refactorizations for the companion bridge.

template <typename R>
Mat<R> block_at(const Mat<R>& c, int bs, int br, int bc) {
    return mat_submatrix(c, br * bs, bc * bs, bs, bs);
}

// Merge the equal block rows in `rows` (kept at rows.front()), summing the
// corresponding block columns. C = X*Y with Y the deduplicated rows.
template <typename R>
std::pair<Mat<R>, EssePair<R>> block_row_amalg(const Mat<R>& c, int bs,
                                               const std::vector<int>& rows) {
    const R& base = c.ring;
    const int T = c.rows / bs;
    require(c.rows == T * bs && c.square(), "block_row_amalg: bad block structure");
    std::vector<int> phi(static_cast<size_t>(T), -1);
    int tnew = 0;
    for (int rr = 0; rr < T; ++rr) {
        bool merged = false;
        for (size_t s = 1; s < rows.size(); ++s) merged |= (rows[s] == rr);
        if (merged) continue;
        phi[static_cast<size_t>(rr)] = tnew++;
    }
    for (size_t s = 1; s < rows.size(); ++s)
        phi[static_cast<size_t>(rows[s])] = phi[static_cast<size_t>(rows[0])];
    const int Tn = tnew;
    Mat<R> x(base, T * bs, Tn * bs);
    for (int rr = 0; rr < T; ++rr)
        mat_paste(x, mat_identity(base, bs), rr * bs, phi[static_cast<size_t>(rr)] * bs);
    Mat<R> y(base, Tn * bs, T * bs);
    for (int rr = 0; rr < T; ++rr) {
        bool keep = phi[static_cast<size_t>(rr)] >= 0;
        bool rep = true;
        for (size_t s = 1; s < rows.size(); ++s)
            if (rows[s] == rr) rep = false;
        if (keep && rep)
            mat_paste(y, mat_submatrix(c, rr * bs, 0, bs, T * bs),
                      phi[static_cast<size_t>(rr)] * bs, 0);
    }
    require(mat_eq(c, mat_mul(x, y)), "block_row_amalg: rows not equal");
    return {mat_mul(y, x), EssePair<R>{x, y}};
}

// Dual: merge equal block columns, summing the corresponding block rows.
template <typename R>
std::pair<Mat<R>, EssePair<R>> block_col_amalg(const Mat<R>& c, int bs,
                                               const std::vector<int>& cols) {
    auto [ct, pairT] = block_row_amalg(mat_transpose(c), bs, cols);
    EssePair<R> pair{mat_transpose(pairT.V), mat_transpose(pairT.U)};
    return {mat_transpose(ct), std::move(pair)};
}

// Block column `col` holds a single (possibly zero) block at row `row`;
// factor it out diagonally so the block hops into block row `col`.
template <typename R>
std::pair<Mat<R>, EssePair<R>> block_refactor_col(const Mat<R>& c, int bs, int row, int col) {
    const R& base = c.ring;
    const int T = c.rows / bs;
    Mat<R> beta = block_at(c, bs, row, col);
    for (int rr = 0; rr < T; ++rr)
        require(rr == row || mat_is_zero(block_at(c, bs, rr, col)),
                "block_refactor_col: column not isolated");
    Mat<R> x = c;
    mat_paste(x, mat_identity(base, bs), row * bs, col * bs);
    Mat<R> d = mat_identity(base, T * bs);
    mat_paste(d, beta, col * bs, col * bs);
    require(mat_eq(c, mat_mul(x, d)), "block_refactor_col: C != X*D");
    return {mat_mul(d, x), EssePair<R>{x, d}};
}

// A': every A_j feeds block 1 through a private delay line of j-1 blocks.
template <typename R>
Mat<R> build_a_prime(const PolyMat<R>& a, BoxShape shape, std::vector<int>& group_start) {
    const R& base = a.ring.base;
    const int k = shape.k, n = shape.n;
    group_start.assign(static_cast<size_t>(k) + 1, 0);
    int T = 1;
    for (int j = 2; j <= k; ++j) {
        group_start[static_cast<size_t>(j)] = T;
        T += j - 1;
    }
    Mat<R> m(base, T * n, T * n);
    mat_paste(m, mat_pad_zero(polymat_coeff(a, 1), n, n), 0, 0);
    for (int j = 2; j <= k; ++j) {
        int s = group_start[static_cast<size_t>(j)];
        mat_paste(m, mat_pad_zero(polymat_coeff(a, j), n, n), 0, s * n);
        for (int idx = s; idx < s + j - 2; ++idx)
            mat_paste(m, mat_identity(base, n), idx * n, (idx + 1) * n);
        mat_paste(m, mat_identity(base, n), (s + j - 2) * n, 0);
    }
    return m;
}

// Rows (excluding block row 0) exactly equal to [I at block col s].
template <typename R>
std::vector<int> rows_matching_unit(const Mat<R>& c, int bs, int s) {
    const R& base = c.ring;
    const int T = c.rows / bs;
    std::vector<int> out;
    for (int rr = 1; rr < T; ++rr) {
        bool match = true;
        for (int cc = 0; cc < T && match; ++cc) {
            Mat<R> blk = block_at(c, bs, rr, cc);
            match = (cc == s) ? mat_eq(blk, mat_identity(base, bs)) : mat_is_zero(blk);
        }
        if (match) out.push_back(rr);
    }
    return out;
}

// Chain A' -> box(a, shape) by k-2 block row amalgamations.
template <typename R>
SseChain<R> a_prime_row_walk(const PolyMat<R>& a, BoxShape shape) {
    std::vector<int> gs;
    Mat<R> c = build_a_prime(a, shape, gs);
    ChainBuilder<R> chain(c);
    for (int s = 1; s <= shape.k - 2; ++s) {
        auto rows = rows_matching_unit(chain.current(), shape.n, s - 1);
        require(!rows.empty() && rows.front() == s, "a_prime_row_walk: unexpected structure");
        auto [next, pair] = block_row_amalg(chain.current(), shape.n, rows);
        (void)next;
        chain.push(pair);
    }
    require(mat_eq(chain.current(), box(a, shape)), "a_prime_row_walk: endpoint mismatch");
    return chain.take();
}

// Chain A' -> A*: each A_j travels from block (0, s_j) to the tail of its
// delay line in block column 0 by j-1 diagonal refactorizations.
template <typename R>
SseChain<R> a_prime_refactor_walk(const PolyMat<R>& a, BoxShape shape, Mat<R>& a_star_out) {
    std::vector<int> gs;
    Mat<R> c = build_a_prime(a, shape, gs);
    ChainBuilder<R> chain(c);
    const int n = shape.n;
    for (int j = 2; j <= shape.k; ++j) {
        int col = gs[static_cast<size_t>(j)];
        int row = 0;
        for (int hop = 0; hop < j - 1; ++hop) {
            // the block at (row, col) hops to (col, next) where next is the
            // single unit column of block row `col`
            int next = -1;
            const Mat<R>& cur = chain.current();
            const int T = cur.rows / n;
            for (int cc = 0; cc < T; ++cc)
                if (!mat_is_zero(block_at(cur, n, col, cc))) {
                    require(next < 0, "a_prime_refactor_walk: ambiguous hop");
                    next = cc;
                }
            require(next >= 0, "a_prime_refactor_walk: no hop target");
            auto [nextmat, pair] = block_refactor_col(cur, n, row, col);
            (void)nextmat;
            chain.push(pair);
            row = col;
            col = next;
        }
    }
    a_star_out = chain.current();
    return chain.take();
}

template <typename R>
std::vector<int> cols_matching_unit(const Mat<R>& c, int bs, int s) {
    auto rows = rows_matching_unit(mat_transpose(c), bs, s);
    return rows;
}

// Chain A* -> box_col(a, shape) by k-2 block column amalgamations.
template <typename R>
SseChain<R> a_star_col_walk(const Mat<R>& a_star, const PolyMat<R>& a, BoxShape shape) {
    ChainBuilder<R> chain(a_star);
    for (int s = 1; s <= shape.k - 2; ++s) {
        auto cols = cols_matching_unit(chain.current(), shape.n, s - 1);
        require(!cols.empty() && cols.front() == s, "a_star_col_walk: unexpected structure");
        auto [next, pair] = block_col_amalg(chain.current(), shape.n, cols);
        (void)next;
        chain.push(pair);
    }
    require(mat_eq(chain.current(), box_col(a, shape)), "a_star_col_walk: endpoint mismatch");
    return chain.take();
}

template <typename R>
SseChain<R> companion_bridge(const PolyMat<R>& a, BoxShape shape) {
    PolyMat<R> apad = polymat_pad(a, shape.n);
    ChainBuilder<R> chain(box(apad, shape));
    if (shape.k <= 1) {
        require(mat_eq(box(apad, shape), box_col(apad, shape)), "companion_bridge: k=1 mismatch");
        return chain.take();
    }
    if (shape.k == 2) {
        // One refactorization: [[A1,A2],[I,0]] = [[A1,I],[I,0]] diag(I,A2).
        auto [next, pair] = block_refactor_col(chain.current(), shape.n, 0, 1);
        (void)next;
        chain.push(pair);
        require(mat_eq(chain.current(), box_col(apad, shape)), "companion_bridge: k=2 mismatch");
        return chain.take();
    }
    chain.append_reversed(a_prime_row_walk(apad, shape));
    Mat<R> a_star(apad.ring.base);
    chain.append(a_prime_refactor_walk(apad, shape, a_star));
    chain.append(a_star_col_walk(a_star, apad, shape));
    return chain.take();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Public single-step translations.

// Chain from box(a, shape) to box(b, (shape.k + l, shape.n)) where
// I - b = E (I - a) (left) or (I - a) E (right) and E has the monomial
// offdiagonal coefficient r t^l, l >= 1. A zero coefficient yields the empty
// chain. Auxiliary indices needed by degrees l >= 2 enlarge the block size
// internally and shrink it back.
template <typename R>
SseChain<R> elem_step_to_sse(const PolyMat<R>& a, const ElemOp<R>& e, BoxShape shape,
                             PolyMat<R>* b_out = nullptr) {
    const R& base = a.ring.base;
    require(a.square() && polymat_in_t_ideal(a), "elem_step_to_sse: input must lie in tR[t]");
    require(shape.n >= a.rows && shape.n >= e.max_index(), "elem_step_to_sse: shape too small");
    require(shape.k >= std::max(1, polymat_degree(a)), "elem_step_to_sse: degree exceeds shape");

    if (e.coeff.is_zero()) {
        PolyMat<R> apad = polymat_pad(a, shape.n);
        if (b_out) *b_out = apad;
        ChainBuilder<R> chain(box(apad, shape));
        return chain.take();
    }
    int l = e.coeff.degree();
    require(l >= 1, "elem_step_to_sse: degree-0 op; use conjugation_step_to_sse");
    int nonzero = 0;
    for (const auto& cc : e.coeff.coeffs)
        if (!base.is_zero(cc)) ++nonzero;
    require(nonzero == 1, "elem_step_to_sse: coefficient must be a monomial");
    const auto r = e.coeff.coeff(l);

    int n_eff = (l >= 2) ? std::max(shape.n, 3) : shape.n;
    PolyMat<R> apad = polymat_pad(a, shape.n);
    BoxShape eff{shape.k, n_eff};
    ChainBuilder<R> chain(box(apad, shape));
    if (n_eff != shape.n) chain.append(box_reshape_n(apad, shape, n_eff));

    detail::StepResult<R> st =
        (e.side == OpSide::left)
            ? detail::elem_step_left_monomial(apad, e.i, e.j, r, l, eff)
            : detail::elem_step_right_monomial(apad, e.i, e.j, r, l, eff);
    chain.append(st.chain);
    BoxShape out_eff{shape.k + l, n_eff};
    PolyMat<R> b = mat_submatrix(st.b, 0, 0, shape.n, shape.n);
    if (n_eff != shape.n) {
        // entries beyond the original block size stay zero
        require(mat_eq(polymat_pad(b, n_eff), st.b), "elem_step_to_sse: stray entries");
        chain.append(box_reshape_n(b, out_eff, shape.n));
    }
    require(mat_eq(chain.current(), box(b, BoxShape{shape.k + l, shape.n})),
            "elem_step_to_sse: endpoint mismatch");
    if (b_out) *b_out = b;
    return chain.take();
}

// Degree-0 elementary E: I - b = E (I - a) E^-1, realized on boxes as a
// single similarity by the block diagonal of copies of E.
template <typename R>
SseChain<R> conjugation_step_to_sse(const PolyMat<R>& a, const ElemOp<R>& e, BoxShape shape,
                                    PolyMat<R>* b_out = nullptr) {
    const R& base = a.ring.base;
    require(a.square() && polymat_in_t_ideal(a), "conjugation_step_to_sse: input in tR[t]");
    require(e.coeff.degree() <= 0, "conjugation_step_to_sse: coefficient must be degree 0");
    require(shape.n >= a.rows && shape.n >= e.max_index(),
            "conjugation_step_to_sse: shape too small");
    require(shape.k >= std::max(1, polymat_degree(a)), "conjugation_step_to_sse: shape too small");
    PolyMat<R> apad = polymat_pad(a, shape.n);
    ChainBuilder<R> chain(box(apad, shape));
    if (e.coeff.is_zero()) {
        if (b_out) *b_out = apad;
        return chain.take();
    }
    Mat<R> escal = mat_identity(base, shape.n);
    escal.at(e.i - 1, e.j - 1) = e.coeff.coeff(0);
    Mat<R> escal_inv = mat_identity(base, shape.n);
    escal_inv.at(e.i - 1, e.j - 1) = base.neg(e.coeff.coeff(0));
    auto [conj, pair] = detail::box_conjugation_move(apad, escal, escal_inv, shape);
    chain.push(pair);
    if (b_out) *b_out = conj;
    return chain.take();
}

} // namespace sseforge
