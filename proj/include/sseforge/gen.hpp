#pragma once

#include "se_bridge.hpp"

#include <random>

namespace sseforge {

// Deterministic generator for the seeded property suites. mt19937 output is
// specified bit-exactly by the standard; the bounded sampler below avoids the
// unspecified standard distributions so reports are byte-identical anywhere.
struct Rng {
    std::mt19937 eng;

    explicit Rng(uint32_t seed) : eng(seed) {}

    int uniform(int lo, int hi) {
        require(lo <= hi, "Rng::uniform: empty range");
        auto span = static_cast<uint32_t>(hi - lo + 1);
        return lo + static_cast<int>(eng() % span);
    }

    bool flip() { return uniform(0, 1) == 1; }
};

inline Mat<ZRing> rand_mat(Rng& rng, int rows, int cols, int lo, int hi) {
    Mat<ZRing> m(ZRing{}, rows, cols);
    for (auto& e : m.e) e = rng.uniform(lo, hi);
    return m;
}

// Product of a few elementary matrices; determinant 1.
inline Mat<ZRing> rand_unimodular(Rng& rng, int n, int max_ops) {
    Mat<ZRing> p = mat_identity(ZRing{}, n);
    if (n < 2) return p;
    int ops = rng.uniform(0, max_ops);
    for (int t = 0; t < ops; ++t) {
        int i = rng.uniform(0, n - 1);
        int j = rng.uniform(0, n - 2);
        if (j >= i) ++j;
        bigint c = rng.uniform(-2, 2);
        for (int col = 0; col < n; ++col) p.at(i, col) += c * p.at(j, col);
    }
    return p;
}

inline Mat<ZRing> rand_strictly_upper(Rng& rng, int n, int lo, int hi) {
    Mat<ZRing> m(ZRing{}, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m.at(i, j) = rng.uniform(lo, hi);
    return m;
}

inline Mat<ZRing> rand_nilpotent(Rng& rng, int n, int entry_lo, int entry_hi, int conj_ops) {
    Mat<ZRing> t = rand_strictly_upper(rng, n, entry_lo, entry_hi);
    Mat<ZRing> p = rand_unimodular(rng, n, conj_ops);
    return mat_mul(mat_mul(mat_inverse(p), t), p);
}

// Square matrix over tZ[t] with the requested degree bound.
inline PolyMat<ZRing> rand_polymat_tideal(Rng& rng, int n, int max_deg, int lo, int hi) {
    ZRing Z;
    PolyRing<ZRing> pr(Z);
    PolyMat<ZRing> m(pr, n, n);
    for (auto& entry : m.e) {
        std::vector<bigint> coeffs(static_cast<size_t>(max_deg) + 1, bigint(0));
        for (int d = 1; d <= max_deg; ++d) coeffs[static_cast<size_t>(d)] = rng.uniform(lo, hi);
        entry = Poly<ZRing>(Z, std::move(coeffs));
    }
    return m;
}

// Chain built from the Maller-Shub constructors: a seeding ESSE pair then a
// mix of similarities, zero extensions, and trivial factorizations.
inline SseChain<ZRing> rand_sse_chain(Rng& rng, int max_moves, int max_dim) {
    ZRing Z;
    int n = rng.uniform(1, max_dim), m = rng.uniform(1, max_dim);
    Mat<ZRing> u = rand_mat(rng, n, m, -2, 2);
    Mat<ZRing> v = rand_mat(rng, m, n, -2, 2);
    ChainBuilder<ZRing> b(mat_mul(u, v));
    int moves = rng.uniform(0, max_moves);
    if (moves > 0) b.push(EssePair<ZRing>{u, v});
    for (int t = 1; t < moves; ++t) {
        int cur = b.current().rows;
        int pick = rng.uniform(0, 2);
        if (pick == 1 && cur >= max_dim) pick = 2;
        if (pick == 0 && cur < 2) pick = 2;
        switch (pick) {
        case 0: {
            Mat<ZRing> p = rand_unimodular(rng, cur, 3);
            auto [bb, pair] = similarity_move(b.current(), p, mat_inverse(p));
            (void)bb;
            b.push(pair);
            break;
        }
        case 1: {
            int ext = rng.uniform(1, max_dim - cur);
            bool col = rng.flip();
            Mat<ZRing> uu = col ? rand_mat(rng, cur, ext, -2, 2) : rand_mat(rng, ext, cur, -2, 2);
            auto [e, pair] = zero_extension_move(b.current(), uu, col ? ExtShape::col : ExtShape::row);
            (void)e;
            b.push(pair, /*forward=*/false);
            break;
        }
        default:
            b.push(EssePair<ZRing>{b.current(), mat_identity(Z, cur)});
            break;
        }
    }
    return b.take();
}

// Elementary word with consistent t=0 parts: the degree-0 factors appear on
// both sides, reversed on the right, so the evaluations at t=0 agree.
inline ElWord<ZRing> rand_el_word(Rng& rng, int n, int max_ops, int max_deg) {
    ZRing Z;
    PolyRing<ZRing> pr(Z);
    PolyMat<ZRing> a = rand_polymat_tideal(rng, n, max_deg, -1, 1);

    std::vector<ElemOp<ZRing>> lefts, rights, const_ops;
    int ops = rng.uniform(0, max_ops);
    for (int t = 0; t < ops; ++t) {
        int i = rng.uniform(1, n);
        int j = rng.uniform(1, n - 1);
        if (j >= i) ++j;
        if (rng.uniform(0, 2) == 0) {
            bigint c = rng.uniform(-2, 2);
            if (c == 0) c = 1;
            const_ops.emplace_back(OpSide::left, i, j, poly_const(Z, c));
        } else {
            int deg = rng.uniform(1, 3);
            bigint c = rng.uniform(-2, 2);
            auto side = rng.flip() ? OpSide::left : OpSide::right;
            (side == OpSide::left ? lefts : rights)
                .emplace_back(side, i, j, poly_monomial(Z, c, deg));
        }
    }
    for (const auto& op : const_ops) lefts.push_back(op);
    for (auto it = const_ops.rbegin(); it != const_ops.rend(); ++it)
        rights.push_back(it->with_side(OpSide::right));

    PolyMat<ZRing> x = apply_ops_left(identity_minus(a), lefts);
    x = apply_ops_right(std::move(x), ops_inverted(rights));
    PolyMat<ZRing> b = identity_minus(x);
    require(polymat_in_t_ideal(b), "rand_el_word: generated B leaves tR[t]");

    ElWord<ZRing> w{std::move(a), std::move(b), {}};
    for (auto& op : lefts) w.ops.push_back(std::move(op));
    for (auto& op : rights) w.ops.push_back(std::move(op));
    require(verify_el_word(w).ok, "rand_el_word: word replay failed");
    return w;
}

} // namespace sseforge
