#pragma once

#include "cert.hpp"
#include "smith.hpp"

#include <optional>

namespace sseforge {

// The atomic move: A = U*V, B = V*U.
template <typename R>
struct EssePair {
    Mat<R> U, V;
};

template <typename R>
struct SseMove {
    EssePair<R> pair;
    bool forward = true; // forward: current = U*V, next = V*U
};

template <typename R>
struct SseChain {
    Mat<R> start, end;
    std::vector<SseMove<R>> moves;
};

template <typename R>
Verdict verify_esse(const Mat<R>& a, const Mat<R>& b, const EssePair<R>& pair) {
    require(a.ring.same(b.ring) && a.ring.same(pair.U.ring) && a.ring.same(pair.V.ring),
            "verify_esse: ring mismatch");
    require(a.square() && b.square(), "verify_esse: endpoints must be square");
    require(pair.U.rows == a.rows && pair.V.cols == a.rows && pair.U.cols == pair.V.rows &&
                pair.V.rows == b.rows,
            "verify_esse: dimension mismatch");
    if (!mat_eq(a, mat_mul(pair.U, pair.V))) return Verdict::fail("A != U*V");
    if (!mat_eq(b, mat_mul(pair.V, pair.U))) return Verdict::fail("B != V*U");
    return Verdict::pass();
}

template <typename R>
Verdict verify_sse_chain(const SseChain<R>& chain) {
    require(chain.start.square() && chain.end.square(), "verify_sse_chain: non-square endpoint");
    Mat<R> cur = chain.start;
    for (size_t k = 0; k < chain.moves.size(); ++k) {
        const auto& mv = chain.moves[k];
        const Mat<R>& u = mv.forward ? mv.pair.U : mv.pair.V;
        const Mat<R>& v = mv.forward ? mv.pair.V : mv.pair.U;
        if (cur.rows != u.rows || u.cols != v.rows || v.cols != cur.rows)
            return Verdict::fail("move has mismatched dimensions", static_cast<int>(k));
        if (!mat_eq(cur, mat_mul(u, v)))
            return Verdict::fail("current endpoint != product", static_cast<int>(k));
        cur = mat_mul(v, u);
    }
    if (!mat_eq(cur, chain.end)) return Verdict::fail("endpoint mismatch");
    return Verdict::pass();
}

// Builder that refuses to record a move that does not replay.
template <typename R>
struct ChainBuilder {
    SseChain<R> chain;

    explicit ChainBuilder(Mat<R> start) {
        chain.start = start;
        chain.end = std::move(start);
    }

    const Mat<R>& current() const { return chain.end; }

    void push(EssePair<R> pair, bool forward = true) {
        const Mat<R>& u = forward ? pair.U : pair.V;
        const Mat<R>& v = forward ? pair.V : pair.U;
        require(mat_eq(chain.end, mat_mul(u, v)), "ChainBuilder: move does not match endpoint");
        chain.end = mat_mul(v, u);
        chain.moves.push_back(SseMove<R>{std::move(pair), forward});
    }

    void append(const SseChain<R>& other) {
        require(mat_eq(chain.end, other.start), "ChainBuilder: junction mismatch");
        for (const auto& mv : other.moves) push(mv.pair, mv.forward);
    }

    void append_reversed(const SseChain<R>& other) {
        require(mat_eq(chain.end, other.end), "ChainBuilder: junction mismatch");
        for (auto it = other.moves.rbegin(); it != other.moves.rend(); ++it)
            push(it->pair, !it->forward);
    }

    SseChain<R> take() { return std::move(chain); }
};

template <typename R>
SseChain<R> chain_reversed(const SseChain<R>& c) {
    ChainBuilder<R> b(c.end);
    b.append_reversed(c);
    return b.take();
}

template <typename R>
SseChain<R> chain_transposed(const SseChain<R>& c) {
    // A = UV, B = VU gives A^T = V^T U^T, B^T = U^T V^T.
    ChainBuilder<R> b(mat_transpose(c.start));
    for (const auto& mv : c.moves)
        b.push(EssePair<R>{mat_transpose(mv.pair.V), mat_transpose(mv.pair.U)}, mv.forward);
    require(mat_eq(b.current(), mat_transpose(c.end)), "chain_transposed: endpoint mismatch");
    return b.take();
}

// ---------------------------------------------------------------------------
// Maller-Shub generators compiled to ESSE pairs.

// b = p a p^-1 realized by the pair (U, V) = (p^-1, p a).
template <typename R>
std::pair<Mat<R>, EssePair<R>> similarity_move(const Mat<R>& a, const Mat<R>& p,
                                               const Mat<R>& p_inv) {
    require(a.square(), "similarity_move: non-square");
    require(p.rows == a.rows && p.square() && p_inv.rows == p.rows && p_inv.square(),
            "similarity_move: dimension mismatch");
    require(mat_eq(mat_mul(p, p_inv), mat_identity(a.ring, a.rows)),
            "similarity_move: inverse check failed");
    Mat<R> b = mat_mul(mat_mul(p, a), p_inv);
    return {b, EssePair<R>{p_inv, mat_mul(p, a)}};
}

enum class ExtShape { row, col };

// col: [[A, U],[0, 0]] with pair X = [[I],[0]], Y = [A U];
// row: [[A, 0],[U, 0]] with pair X = [[A],[U]], Y = [I 0].
// Either way X*Y = ext and Y*X = a.
template <typename R>
std::pair<Mat<R>, EssePair<R>> zero_extension_move(const Mat<R>& a, const Mat<R>& u,
                                                   ExtShape shape) {
    require(a.square(), "zero_extension_move: non-square");
    const int n = a.rows;
    if (shape == ExtShape::col) {
        require(u.rows == n, "zero_extension_move: u must have n rows for col shape");
        const int m = u.cols;
        Mat<R> ext(a.ring, n + m, n + m);
        mat_paste(ext, a, 0, 0);
        mat_paste(ext, u, 0, n);
        Mat<R> x(a.ring, n + m, n);
        mat_paste(x, mat_identity(a.ring, n), 0, 0);
        Mat<R> y(a.ring, n, n + m);
        mat_paste(y, a, 0, 0);
        mat_paste(y, u, 0, n);
        return {ext, EssePair<R>{x, y}};
    }
    require(u.cols == n, "zero_extension_move: u must have n cols for row shape");
    const int m = u.rows;
    Mat<R> ext(a.ring, n + m, n + m);
    mat_paste(ext, a, 0, 0);
    mat_paste(ext, u, n, 0);
    Mat<R> x(a.ring, n + m, n);
    mat_paste(x, a, 0, 0);
    mat_paste(x, u, n, 0);
    Mat<R> y(a.ring, n, n + m);
    mat_paste(y, mat_identity(a.ring, n), 0, 0);
    return {ext, EssePair<R>{x, y}};
}

// Peel the last row and column. The row variant needs the last row zero, the
// col variant the last column. Pair satisfies X*Y = a, Y*X = smaller.
template <typename R>
std::pair<Mat<R>, EssePair<R>> trim_zero_row_col(const Mat<R>& a, ExtShape which = ExtShape::row) {
    require(a.square() && a.rows >= 1, "trim_zero_row_col: need a nonempty square matrix");
    const int n = a.rows;
    if (which == ExtShape::row) {
        for (int j = 0; j < n; ++j)
            require(a.ring.is_zero(a.at(n - 1, j)), "trim_zero_row_col: last row not zero");
        Mat<R> x(a.ring, n, n - 1);
        mat_paste(x, mat_identity(a.ring, n - 1), 0, 0);
        Mat<R> y = mat_submatrix(a, 0, 0, n - 1, n);
        return {mat_submatrix(a, 0, 0, n - 1, n - 1), EssePair<R>{x, y}};
    }
    for (int i = 0; i < n; ++i)
        require(a.ring.is_zero(a.at(i, n - 1)), "trim_zero_row_col: last column not zero");
    Mat<R> x = mat_submatrix(a, 0, 0, n, n - 1);
    Mat<R> y(a.ring, n - 1, n);
    mat_paste(y, mat_identity(a.ring, n - 1), 0, 0);
    return {mat_submatrix(a, 0, 0, n - 1, n - 1), EssePair<R>{x, y}};
}

// ---------------------------------------------------------------------------
// Invariants: zeta polynomial, Bowen-Franks divisors, eventual rank.

template <typename R>
Poly<R> zeta_polynomial(const Mat<R>& a) {
    require(a.square(), "zeta_polynomial: non-square");
    return mat_det(pencil_of(a));
}

// Nonunit elementary divisors of I - A, in divisibility order; the trivial
// cokernel is reported as {1}.
template <typename R>
std::vector<typename R::elem> bowen_franks(const Mat<R>& a) {
    require(a.square(), "bowen_franks: non-square");
    require(a.ring.euclidean(), "bowen_franks: euclidean ring required");
    Mat<R> m = mat_sub(mat_identity(a.ring, a.rows), a);
    auto diag = smith_diagonal(m);
    std::vector<typename R::elem> out;
    for (const auto& d : diag)
        if (!a.ring.is_unit(d)) out.push_back(d);
    if (out.empty()) out.push_back(a.ring.one());
    return out;
}

inline int eventual_rank(const Mat<ZRing>& a) {
    return mat_rank_field(mat_z_to_q(mat_pow(a, a.rows)));
}
inline int eventual_rank(const Mat<QRing>& a) { return mat_rank_field(mat_pow(a, a.rows)); }
inline int eventual_rank(const Mat<ZModRing>& a) {
    require(a.ring.euclidean(), "eventual_rank: prime modulus required");
    return mat_rank_field(mat_pow(a, a.rows));
}

template <typename R>
struct InvariantReport {
    Poly<R> zeta;
    std::optional<std::vector<typename R::elem>> bowen_franks;
    std::optional<int> eventual_rank;
};

template <typename R>
InvariantReport<R> invariants(const Mat<R>& a) {
    InvariantReport<R> rep;
    rep.zeta = zeta_polynomial(a);
    if (a.ring.euclidean()) {
        rep.bowen_franks = bowen_franks(a);
        rep.eventual_rank = eventual_rank(a);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Nilpotent machinery (the Nil_0(Z) = 0 witnesses).

inline bool is_nilpotent(const Mat<ZRing>& n) {
    require(n.square(), "is_nilpotent: non-square");
    return mat_is_zero(mat_pow(n, n.rows));
}

// Chain from a nilpotent integer matrix to the empty matrix: one
// triangularizing similarity when needed, then a trim per row.
inline SseChain<ZRing> nilpotent_reduce(const Mat<ZRing>& n) {
    auto sat = kernel_saturation_basis(n);
    require(sat.nilpotent, "nilpotent_reduce: matrix is not nilpotent");
    ChainBuilder<ZRing> b(n);
    Mat<ZRing> cur = n;
    if (!mat_eq(sat.P, mat_identity(n.ring, n.rows))) {
        auto [conj, pair] = similarity_move(n, sat.P, mat_inverse(sat.P));
        b.push(pair);
        cur = conj;
    }
    for (int k = n.rows; k > 0; --k) {
        auto [smaller, pair] = trim_zero_row_col(cur, ExtShape::row);
        b.push(pair);
        cur = smaller;
    }
    require(b.current().empty(), "nilpotent_reduce: did not reach the empty matrix");
    return b.take();
}

// Chain from a + n (direct sum, n nilpotent over Z) down to a.
inline SseChain<ZRing> a_plus_nilpotent_collapse(const Mat<ZRing>& a, const Mat<ZRing>& n) {
    require(a.square(), "a_plus_nilpotent_collapse: non-square");
    auto sat = kernel_saturation_basis(n);
    require(sat.nilpotent, "a_plus_nilpotent_collapse: block not nilpotent");
    Mat<ZRing> start = mat_direct_sum(a, n);
    ChainBuilder<ZRing> b(start);
    Mat<ZRing> cur = start;
    if (!mat_eq(sat.P, mat_identity(n.ring, n.rows))) {
        Mat<ZRing> p = mat_direct_sum(mat_identity(a.ring, a.rows), sat.P);
        auto [conj, pair] = similarity_move(cur, p, mat_inverse(p));
        b.push(pair);
        cur = conj;
    }
    for (int k = n.rows; k > 0; --k) {
        auto [smaller, pair] = trim_zero_row_col(cur, ExtShape::row);
        b.push(pair);
        cur = smaller;
    }
    require(mat_eq(b.current(), a), "a_plus_nilpotent_collapse: endpoint mismatch");
    return b.take();
}

enum class NilpotentSide { a_nilpotent, b_nilpotent };

// [[A, X],[0, B]] ~ A + B when A or B is nilpotent, by the factorizations
// [[A,X],[0,B]] = [[I,X],[0,B]] [[A,0],[0,I]]  (corner becomes A X)
// [[A,X],[0,B]] = [[I,0],[0,B]] [[A,X],[0,I]]  (corner becomes X B).
template <typename R>
SseChain<R> split_nilpotent_extension(const Mat<R>& m, int a_size, NilpotentSide which) {
    require(m.square() && a_size >= 0 && a_size <= m.rows, "split_nilpotent_extension: bad sizes");
    const int n = m.rows, bs = n - a_size;
    Mat<R> a = mat_submatrix(m, 0, 0, a_size, a_size);
    Mat<R> bblk = mat_submatrix(m, a_size, a_size, bs, bs);
    require(mat_is_zero(mat_submatrix(m, a_size, 0, bs, a_size)),
            "split_nilpotent_extension: not block upper triangular");
    const Mat<R>& nil = (which == NilpotentSide::a_nilpotent) ? a : bblk;
    require(mat_is_zero(mat_pow(nil, nil.rows)), "split_nilpotent_extension: block not nilpotent");

    ChainBuilder<R> builder(m);
    Mat<R> x = mat_submatrix(m, 0, a_size, a_size, bs);
    const int bound = n * n + 1;
    int steps = 0;
    while (!mat_is_zero(x)) {
        require(++steps <= bound, "split_nilpotent_extension: corner failed to vanish");
        Mat<R> u(m.ring, n, n), v(m.ring, n, n);
        if (which == NilpotentSide::a_nilpotent) {
            // U = [[I,X],[0,B]], V = [[A,0],[0,I]]
            mat_paste(u, mat_identity(m.ring, a_size), 0, 0);
            mat_paste(u, x, 0, a_size);
            mat_paste(u, bblk, a_size, a_size);
            mat_paste(v, a, 0, 0);
            mat_paste(v, mat_identity(m.ring, bs), a_size, a_size);
            x = mat_mul(a, x);
        } else {
            // U = [[I,0],[0,B]], V = [[A,X],[0,I]]
            mat_paste(u, mat_identity(m.ring, a_size), 0, 0);
            mat_paste(u, bblk, a_size, a_size);
            mat_paste(v, a, 0, 0);
            mat_paste(v, x, 0, a_size);
            mat_paste(v, mat_identity(m.ring, bs), a_size, a_size);
            x = mat_mul(x, bblk);
        }
        builder.push(EssePair<R>{std::move(u), std::move(v)});
    }
    require(mat_eq(builder.current(), mat_direct_sum(a, bblk)),
            "split_nilpotent_extension: endpoint mismatch");
    return builder.take();
}

// ---------------------------------------------------------------------------
// Shift equivalence witnesses.

template <typename R>
struct SEWitness {
    Mat<R> Rm, S;
    int lag = 1;
};

template <typename R>
Verdict verify_se(const Mat<R>& a, const Mat<R>& b, const SEWitness<R>& w) {
    require(a.square() && b.square(), "verify_se: endpoints must be square");
    require(w.lag >= 1, "verify_se: lag must be positive");
    require(w.Rm.rows == a.rows && w.Rm.cols == b.rows && w.S.rows == b.rows && w.S.cols == a.rows,
            "verify_se: dimension mismatch");
    if (!mat_eq(mat_mul(w.Rm, w.S), mat_pow(a, w.lag))) return Verdict::fail("R*S != A^l", 0);
    if (!mat_eq(mat_mul(w.S, w.Rm), mat_pow(b, w.lag))) return Verdict::fail("S*R != B^l", 1);
    if (!mat_eq(mat_mul(a, w.Rm), mat_mul(w.Rm, b))) return Verdict::fail("A*R != R*B", 2);
    if (!mat_eq(mat_mul(w.S, a), mat_mul(b, w.S))) return Verdict::fail("S*A != B*S", 3);
    return Verdict::pass();
}

// SSE implies SE: R is the ordered product of the U's, S the reversed product
// of the V's, lag the number of moves (at least 1).
template <typename R>
SEWitness<R> sse_chain_to_se(const SseChain<R>& chain) {
    require(verify_sse_chain(chain).ok, "sse_chain_to_se: invalid chain");
    if (chain.moves.empty())
        return SEWitness<R>{mat_identity(chain.start.ring, chain.start.rows), chain.start, 1};
    Mat<R> r = mat_identity(chain.start.ring, chain.start.rows);
    Mat<R> s = mat_identity(chain.start.ring, chain.start.rows);
    for (const auto& mv : chain.moves) {
        const Mat<R>& u = mv.forward ? mv.pair.U : mv.pair.V;
        const Mat<R>& v = mv.forward ? mv.pair.V : mv.pair.U;
        r = mat_mul(r, u);
        s = mat_mul(v, s);
    }
    SEWitness<R> w{std::move(r), std::move(s), static_cast<int>(chain.moves.size())};
    require(verify_se(chain.start, chain.end, w).ok, "sse_chain_to_se: witness replay failed");
    return w;
}

} // namespace sseforge
