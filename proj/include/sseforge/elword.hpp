#pragma once

#include "boxops.hpp"

namespace sseforge {

// A word of basic elementary factors claiming
//   E_j ... E_2 E_1 (I - A) = (I - B) F_1 F_2 ... F_k
// with A, B over tR[t]. Left ops list the E_i in application order (E_1
// first); right ops list the F_i in multiplication order (F_1 first).
template <typename R>
struct ElWord {
    PolyMat<R> A, B;
    std::vector<ElemOp<R>> ops;
};

template <typename R>
Verdict verify_el_word(const ElWord<R>& w) {
    if (!w.A.square() || !w.B.square()) return Verdict::fail("endpoints must be square");
    if (!polymat_in_t_ideal(w.A) || !polymat_in_t_ideal(w.B))
        return Verdict::fail("endpoints must lie in tR[t]");
    int n = std::max({w.A.rows, w.B.rows, ops_max_index(w.ops)});
    std::vector<ElemOp<R>> lefts, rights;
    for (const auto& op : w.ops)
        (op.side == OpSide::left ? lefts : rights).push_back(op);
    PolyMat<R> lhs = stable_padded(stable_st1(identity_minus(polymat_pad(w.A, w.A.rows))), n);
    lhs = apply_ops_left(std::move(lhs), lefts);
    PolyMat<R> rhs = stable_padded(stable_st1(identity_minus(polymat_pad(w.B, w.B.rows))), n);
    rhs = apply_ops_right(std::move(rhs), rights);
    if (!mat_eq(lhs, rhs)) return Verdict::fail("word identity failed replay");
    return Verdict::pass();
}

namespace detail {

// Split an elementary factor into monomial factors at the same position;
// they commute, so order is free. The constant part comes first.
template <typename R>
std::vector<ElemOp<R>> split_monomials(const ElemOp<R>& op) {
    std::vector<ElemOp<R>> out;
    const auto& base = op.coeff.ring;
    for (int d = 0; d <= op.coeff.degree(); ++d)
        if (!base.is_zero(op.coeff.coeff(d)))
            out.emplace_back(op.side, op.i, op.j, poly_monomial(base, op.coeff.coeff(d), d));
    return out;
}

} // namespace detail

// The difficult direction of the correspondence: translate an elementary
// word between I-A and I-B into a verified chain from box(A) to box(B).
// Degree-0 factors act by block-diagonal similarity, positive-degree factors
// through the column splitting engine; the residual t=0 parts meet in a
// final similarity.
template <typename R>
SseChain<R> el_to_sse(const ElWord<R>& word, BoxShape shape) {
    const R& base = word.A.ring.base;
    require(verify_el_word(word).ok, "el_to_sse: word identity failed replay");
    require(shape.n >= word.A.rows, "el_to_sse: shape too small");
    require(shape.k >= std::max(1, polymat_degree(word.A)), "el_to_sse: degree exceeds shape");

    std::vector<ElemOp<R>> lefts, rights;
    for (const auto& op : word.ops) {
        auto ms = detail::split_monomials(op);
        auto& dst = (op.side == OpSide::left) ? lefts : rights;
        dst.insert(dst.end(), ms.begin(), ms.end());
    }
    bool needs_aux = false;
    for (const auto& op : lefts) needs_aux |= op.coeff.degree() >= 2;
    for (const auto& op : rights) needs_aux |= op.coeff.degree() >= 2;
    // Ops beyond the cores act in the st1 world; lift the block size to hold
    // them plus an auxiliary index for higher-degree factors.
    int n_eff = std::max({shape.n, std::max(1, word.B.rows), ops_max_index(word.ops)});
    if (needs_aux) n_eff = std::max(n_eff, 3);

    PolyMat<R> apad = polymat_pad(word.A, n_eff);
    PolyMat<R> bpad = polymat_pad(word.B, n_eff);
    BoxShape outer{shape.k, shape.n};
    ChainBuilder<R> chain(box(polymat_pad(word.A, shape.n), outer));
    if (n_eff != shape.n) chain.append(box_reshape_n(polymat_pad(word.A, shape.n), outer, n_eff));

    // Left pass: peel the E_i, accumulating their t=0 parts G = G_j ... G_1.
    PolyMat<R> cur = apad;
    BoxShape cshape{shape.k, n_eff};
    Mat<R> g = mat_identity(base, n_eff);
    Mat<R> g_inv = g;
    for (const auto& op : lefts) {
        if (op.coeff.degree() <= 0) {
            PolyMat<R> next;
            chain.append(conjugation_step_to_sse(cur, op, cshape, &next));
            cur = std::move(next);
            Mat<R> es = mat_identity(base, n_eff);
            es.at(op.i - 1, op.j - 1) = op.coeff.coeff(0);
            Mat<R> esi = mat_identity(base, n_eff);
            esi.at(op.i - 1, op.j - 1) = base.neg(op.coeff.coeff(0));
            g = mat_mul(es, g);
            g_inv = mat_mul(g_inv, esi);
        } else {
            PolyMat<R> next;
            chain.append(elem_step_to_sse(cur, op, cshape, &next));
            cur = polymat_pad(next, n_eff);
            cshape.k += op.coeff.degree();
        }
    }

    // Right pass: peel the F_i from box(B), accumulating H = H_1 ... H_k.
    const int kb = std::max(1, polymat_degree(bpad));
    const int nb = std::max(1, word.B.rows);
    ChainBuilder<R> bchain(box(polymat_pad(word.B, nb), BoxShape{kb, nb}));
    if (n_eff != nb) bchain.append(box_reshape_n(polymat_pad(word.B, nb), BoxShape{kb, nb}, n_eff));
    PolyMat<R> bcur = bpad;
    BoxShape bshape{kb, n_eff};
    Mat<R> h = mat_identity(base, n_eff);
    for (const auto& op : rights) {
        if (op.coeff.degree() <= 0) {
            // I - B_i = H_i^-1 (I - B_{i-1}) H_i
            ElemOp<R> conj_op(OpSide::left, op.i, op.j, poly_neg(op.coeff));
            PolyMat<R> next;
            bchain.append(conjugation_step_to_sse(bcur, conj_op, bshape, &next));
            bcur = std::move(next);
            Mat<R> hs = mat_identity(base, n_eff);
            hs.at(op.i - 1, op.j - 1) = op.coeff.coeff(0);
            h = mat_mul(h, hs);
        } else {
            PolyMat<R> next;
            bchain.append(elem_step_to_sse(bcur, op.with_side(OpSide::right), bshape, &next));
            bcur = polymat_pad(next, n_eff);
            bshape.k += op.coeff.degree();
        }
    }

    // Evaluating the word identity at t = 0 forces G = H.
    require(mat_eq(g, h), "el_to_sse: t=0 products disagree");
    PolyMat<R> conj = mat_mul(mat_mul(mat_to_polymat(g_inv), cur), mat_to_polymat(g));
    require(mat_eq(conj, bcur), "el_to_sse: residual conjugation mismatch");

    int dstar = std::max(cshape.k, bshape.k);
    chain.append(box_reshape_k(cur, cshape, dstar));
    bchain.append(box_reshape_k(bcur, bshape, dstar));
    if (!mat_eq(cur, bcur) || !mat_eq(g, mat_identity(base, n_eff))) {
        auto [fin, pair] =
            detail::box_conjugation_move(cur, g_inv, g, BoxShape{dstar, n_eff});
        require(mat_eq(fin, bcur), "el_to_sse: final similarity mismatch");
        chain.push(pair);
    }
    chain.append_reversed(bchain.take());
    require(mat_eq(chain.current(), box(polymat_pad(word.B, nb), BoxShape{kb, nb})),
            "el_to_sse: endpoint mismatch");
    return chain.take();
}

// ---------------------------------------------------------------------------
// The easy direction: an SSE chain yields an El(R[t]) certificate between
// I - tA and I - tB, from the Maller-Shub block identities
//   [[I,0],[V,I]] [[I,-tU],[0,I]] ((I-tA) + I) =
//   (I + (I-tB)) [[I,-tU],[0,I]] [[I,0],[V,I]].

namespace detail {

template <typename R>
ElCert<R> esse_move_cert(const Mat<R>& u, const Mat<R>& v) {
    const R& base = u.ring;
    PolyRing<R> pr(base);
    const int n = u.rows, m = u.cols;
    ElCert<R> cert;
    cert.pad = m;
    if (n + m == 0) return cert;

    PolyMat<R> tu(pr, n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            if (!base.is_zero(u.at(i, j)))
                tu.at(i, j) = poly_monomial(base, base.neg(u.at(i, j)), 1);
    PolyMat<R> vp = mat_to_polymat(v);

    auto l2 = ops_block_unipotent(tu, 0, n, OpSide::left);          // [[I,-tU],[0,I]]
    auto l1 = ops_block_unipotent(vp, n, 0, OpSide::left);          // [[I,0],[V,I]]

    // Signed block swap moving I_n + (I-tB) to (I-tB) + I_n.
    std::vector<int> perm(static_cast<size_t>(n + m));
    for (int b = 0; b < n + m; ++b)
        perm[static_cast<size_t>(b)] = (b < n) ? b + m : b - n;
    int inversions = 0;
    for (size_t x = 0; x < perm.size(); ++x)
        for (size_t y = x + 1; y < perm.size(); ++y)
            if (perm[x] > perm[y]) ++inversions;
    std::vector<int> sign(static_cast<size_t>(n + m), 1);
    if (inversions % 2 == 1) {
        require(n >= 1, "esse_move_cert: cannot absorb the swap sign");
        sign[0] = -1; // column 0 targets the identity block, so the sign is inert
    }
    auto omega = ops_signed_perm(pr, perm, sign, OpSide::left);

    // lhs product: Omega * L1 * L2; rhs product: L1^-1 * L2^-1 * Omega^-1.
    cert.lhs = l2;
    cert.lhs.insert(cert.lhs.end(), l1.begin(), l1.end());
    cert.lhs.insert(cert.lhs.end(), omega.begin(), omega.end());
    std::vector<ElemOp<R>> rhs_left = ops_inverted(omega);
    auto l2i = ops_inverted(l2);
    auto l1i = ops_inverted(l1);
    rhs_left.insert(rhs_left.end(), l2i.begin(), l2i.end());
    rhs_left.insert(rhs_left.end(), l1i.begin(), l1i.end());
    cert.rhs = ops_as_right(rhs_left);
    return cert;
}

} // namespace detail

template <typename R>
ElCert<R> sse_to_el(const SseChain<R>& chain) {
    require(verify_sse_chain(chain).ok, "sse_to_el: invalid chain");
    ElCert<R> cert;
    cert.pad = 0;
    for (const auto& mv : chain.moves) {
        const Mat<R>& u = mv.forward ? mv.pair.U : mv.pair.V;
        const Mat<R>& v = mv.forward ? mv.pair.V : mv.pair.U;
        cert = el_cert_compose(cert, detail::esse_move_cert(u, v));
    }
    Verdict ok = verify_el_cert(stable_st1(pencil_of(chain.start)),
                                stable_st1(pencil_of(chain.end)), cert);
    require(ok.ok, "sse_to_el: emitted certificate failed replay: " + ok.reason);
    return cert;
}

// Extract an elementary word from a certificate between I-A and I-B:
// E's are the lhs list, F's the reversed-inverted rhs list.
template <typename R>
ElWord<R> el_cert_to_word(const PolyMat<R>& a, const PolyMat<R>& b, const ElCert<R>& cert) {
    ElWord<R> w{a, b, {}};
    for (const auto& op : cert.lhs) w.ops.push_back(op.with_side(OpSide::left));
    auto finv = ops_inverted(cert.rhs);
    for (const auto& op : finv) w.ops.push_back(op.with_side(OpSide::right));
    require(verify_el_word(w).ok, "el_cert_to_word: word replay failed");
    return w;
}

// ---------------------------------------------------------------------------
// Certificate between (I-a) and I-t*box(a): eliminate the -tI subdiagonal of
// the pencil column by column, accumulating t-powers into the top block row.

template <typename R>
ElCert<R> box_to_linear_cert(const PolyMat<R>& a, BoxShape shape) {
    const R& base = a.ring.base;
    PolyRing<R> pr(base);
    const int n = shape.n, k = shape.k;
    PolyMat<R> apad = polymat_pad(a, n);
    Mat<R> bx = box(apad, shape);
    PolyMat<R> c = pencil_of(bx);

    std::vector<ElemOp<R>> lefts, rights; // application order, reducing direction
    auto apply_left = [&](ElemOp<R> op) {
        apply_op_left_inplace(c, op);
        lefts.push_back(std::move(op));
    };
    auto apply_right = [&](ElemOp<R> op) {
        apply_op_right_inplace(c, op);
        rights.push_back(std::move(op));
    };

    Poly<R> tpoly = poly_monomial(base, base.one(), 1);
    for (int j = k - 1; j >= 1; --j) {
        // block col j-1 += t * block col j (clears the -tI block below)
        for (int s = 0; s < n; ++s)
            apply_right(ElemOp<R>(OpSide::right, j * n + s + 1, (j - 1) * n + s + 1, tpoly));
        // block row 0 -= T * block row j where T is the current (0, j) block
        for (int s = 0; s < n; ++s)
            for (int cidx = 0; cidx < n; ++cidx) {
                const Poly<R>& entry = c.at(s, j * n + cidx);
                if (entry.is_zero()) continue;
                apply_left(ElemOp<R>(OpSide::left, s + 1, j * n + cidx + 1, poly_neg(entry)));
            }
        for (int s = 0; s < n; ++s)
            for (int cidx = 0; cidx < n; ++cidx)
                require(c.at(s, j * n + cidx).is_zero(), "box_to_linear_cert: block not cleared");
    }
    PolyMat<R> target = mat_direct_sum(identity_minus(apad), mat_identity(pr, (k - 1) * n));
    require(mat_eq(c, target), "box_to_linear_cert: reduction failed");

    // Collected ops take I-t*box to (I-a) + I; invert for the claimed direction.
    ElCert<R> reduction{std::move(lefts), std::move(rights), 0};
    ElCert<R> cert = el_cert_inverted(reduction, (k - 1) * n);
    Verdict ok = verify_el_cert(stable_st1(identity_minus(apad)), stable_st1(pencil_of(bx)), cert);
    require(ok.ok, "box_to_linear_cert: certificate failed replay: " + ok.reason);
    return cert;
}

// ---------------------------------------------------------------------------
// Elementary factorization of an invertible scalar matrix, when one exists
// (the product of the diagonal obstructions must be 1). Returns ops in
// application order whose left product equals the input.

template <typename R>
std::optional<std::vector<ElemOp<R>>> factor_scalar_elementary(const Mat<R>& m0) {
    const R& base = m0.ring;
    require(m0.square(), "factor_scalar_elementary: non-square");
    if (!base.euclidean()) return std::nullopt;
    const int n = m0.rows;
    Mat<R> c = m0;
    std::vector<ElemOp<R>> reducers;
    auto push_left = [&](int i, int j, typename R::elem coeff) {
        ElemOp<R> op(OpSide::left, i + 1, j + 1, poly_const(base, coeff));
        // row i += coeff * row j
        for (int t = 0; t < n; ++t) c.at(i, t) = base.add(c.at(i, t), base.mul(coeff, c.at(j, t)));
        reducers.push_back(std::move(op));
    };
    auto push_rotation = [&](int i, int j) {
        push_left(i, j, base.neg(base.one()));
        push_left(j, i, base.one());
        push_left(i, j, base.neg(base.one()));
    };

    for (int col = 0; col < n; ++col) {
        for (;;) {
            int pivot = -1;
            bigint best = 0;
            for (int r = col; r < n; ++r) {
                if (base.is_zero(c.at(r, col))) continue;
                bigint nrm = base.euclid_norm(c.at(r, col));
                if (pivot < 0 || nrm < best) { pivot = r; best = nrm; }
            }
            if (pivot < 0) return std::nullopt; // singular
            if (pivot != col) push_rotation(col, pivot);
            bool clean = true;
            for (int r = 0; r < n; ++r) {
                if (r == col || base.is_zero(c.at(r, col))) continue;
                auto [q, rem] = base.divmod(c.at(r, col), c.at(col, col));
                push_left(r, col, base.neg(q));
                if (!base.is_zero(rem)) clean = false;
            }
            if (clean) break;
        }
    }
    // Now c is diagonal; cascade units to the last slot via Whitehead pairs.
    for (int i = 0; i + 1 < n; ++i) {
        const auto d = c.at(i, i);
        if (base.eq(d, base.one())) continue;
        if (!base.is_unit(d)) return std::nullopt;
        const auto u = base.inv_unit(d); // scale row i by u, row i+1 by u^-1
        push_rotation(i, i + 1);
        push_left(i, i + 1, u);
        push_left(i + 1, i, base.neg(d));
        push_left(i, i + 1, u);
    }
    if (n > 0 && !base.eq(c.at(n - 1, n - 1), base.one())) return std::nullopt;
    require(mat_eq(c, mat_identity(base, n)), "factor_scalar_elementary: reduction failed");
    return ops_inverted(reducers);
}

// ---------------------------------------------------------------------------
// Higman linearization: a square polynomial matrix with elementary-realizable
// constant term is El(R[t]) equivalent to a pencil I - tA. Degree reduction
// borders the matrix by one block per degree, as in the companion form.

template <typename R>
struct HigmanResult {
    Mat<R> a;
    ElCert<R> cert; // between p_st1 and (I - t a)_st1
};

template <typename R>
HigmanResult<R> higman_linearize(const PolyMat<R>& p) {
    const R& base = p.ring.base;
    PolyRing<R> pr = p.ring;
    require(p.square(), "higman_linearize: non-square");
    const int n = p.rows;
    Mat<R> p0 = polymat_eval_zero(p);

    // Exhibit invertibility, then an elementary realization.
    auto factors = factor_scalar_elementary(p0);
    require(factors.has_value(),
            "higman_linearize: constant term is not a product of elementary matrices");

    ElCert<R> cert;
    cert.lhs = ops_inverted(*factors); // left-multiply by p(0)^-1
    PolyMat<R> x = apply_ops_left(p, cert.lhs);
    require(mat_eq(polymat_eval_zero(x), mat_identity(base, n)),
            "higman_linearize: constant term not normalized");

    while (polymat_degree(x) >= 2) {
        const int sz = x.rows;
        const int d = polymat_degree(x);
        Mat<R> top = polymat_coeff(x, d);
        for (int r = n; r < sz; ++r)
            for (int cc = 0; cc < sz; ++cc)
                require(base.is_zero(top.at(r, cc)), "higman_linearize: top coeff leaks rows");
        x = mat_direct_sum(x, mat_identity(pr, n));
        // rows: row s += t^{d-1} * row (sz+s); columns: col c -= t * C~(s,c) scaled
        for (int s = 0; s < n; ++s) {
            ElemOp<R> op(OpSide::left, s + 1, sz + s + 1, poly_monomial(base, base.one(), d - 1));
            apply_op_left_inplace(x, op);
            cert.lhs.push_back(std::move(op));
        }
        for (int s = 0; s < n; ++s)
            for (int cc = 0; cc < sz; ++cc) {
                if (base.is_zero(top.at(s, cc))) continue;
                ElemOp<R> op(OpSide::right, sz + s + 1, cc + 1,
                             poly_monomial(base, base.neg(top.at(s, cc)), 1));
                apply_op_right_inplace(x, op);
                cert.rhs.push_back(std::move(op));
            }
        require(polymat_degree(x) == d - 1, "higman_linearize: degree did not drop");
    }

    HigmanResult<R> out{Mat<R>(base), std::move(cert)};
    if (polymat_degree(x) <= 0) {
        require(mat_eq(x, mat_identity(pr, x.rows)), "higman_linearize: degree-0 remainder not I");
        out.a = Mat<R>(base, 1, 1); // the 1x1 zero matrix
    } else {
        out.a = mat_neg(polymat_coeff(x, 1));
        require(mat_eq(polymat_eval_zero(x), mat_identity(base, x.rows)),
                "higman_linearize: pencil malformed");
    }
    out.cert.pad = std::max(0, x.rows - n);
    Verdict ok = verify_el_cert(stable_st1(p), stable_st1(pencil_of(out.a)), out.cert);
    require(ok.ok, "higman_linearize: certificate failed replay: " + ok.reason);
    return out;
}

} // namespace sseforge
